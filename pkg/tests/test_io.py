from fractions import Fraction

import pytest
from hypothesis import given

from strategies import complexes
from zacyclic.constructions import PolyhedralComplex, weber_seifert_quotient
from zacyclic.geometry import Coordinates
from zacyclic.io import FormatError, format_complex, format_coordinates, format_polyhedral, parse_complex, parse_coordinates


def test_parse_complex_basic():
    K = parse_complex("vertices: A B C D  # comment\nfacet: A B C\n\nfacet: C D\n")
    assert K.f_vector == (4, 4, 1)


def test_isolated_vertices_survive():
    K = parse_complex("vertices: A B Z\nfacet: A B\n")
    assert "Z" in K.vertices


@pytest.mark.parametrize("text", [
    "facet: A B C\n",
    "vertices: A B\nfacet: A C\n",
    "vertices: A A\n",
    "vertices: A B\nfacet: A A\n",
    "vertices: A\nvertices: B\n",
    "vertices: A B\nedge: A B\n",
    "vertices: A B\nnonsense line\n",
])
def test_bad_complex_files(text):
    with pytest.raises(FormatError):
        parse_complex(text)


def test_polygon_files():
    P = weber_seifert_quotient(1)
    Q = parse_complex(format_polyhedral(P))
    assert isinstance(Q, PolyhedralComplex)
    assert Q.counts == (5, 10, 6)


@given(complexes(max_dim=3))
def test_complex_roundtrip(K):
    assert parse_complex(format_complex(K)) == K


def test_coordinates_roundtrip():
    c = Coordinates(3, {"A": (0, Fraction(-1, 2), 3), "B": (1, 1, 1)})
    text = format_coordinates(c)
    assert "A: 0 -1/2 3" in text
    assert parse_coordinates(text) == c


@pytest.mark.parametrize("text", [
    "A: 1 2 3\n",
    "dim: 3\nA: 1 2\n",
    "dim: 3\nA: 1 2 x\n",
    "dim: 2\nA: 1 2\nA: 3 4\n",
    "dim: 2\nA: 1/0 2\n",
    "dim: x\n",
])
def test_bad_coordinates(text):
    with pytest.raises(FormatError):
        parse_coordinates(text)
