from importlib import resources

import pytest

from zacyclic.complex import ComplexError, make_complex
from zacyclic.constructions import shaded_complex, the_23_vertex_complex
from zacyclic.geometry import Coordinates, GeometryError, verify_embedding
from zacyclic.io import parse_coordinates
from zacyclic.realization import (
    TETRA_POINTS, check_equivariance, cone_realization, export_model, export_off, match_action,
    search_coordinates, tetrahedral_rotation_group,
)


def fixture(name):
    return parse_coordinates(resources.files("zacyclic").joinpath("models", name).read_text())


@pytest.fixture(scope="module")
def S():
    return shaded_complex()


@pytest.fixture(scope="module")
def action(S):
    return match_action(S)


def _det(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def test_rotation_group():
    G = tetrahedral_rotation_group(3)
    assert len(G) == len(set(G)) == 12
    assert all(_det(M) == 1 for M in G)
    tetra = set(TETRA_POINTS)
    for M in G:
        assert {tuple(sum(M[r][c] * p[c] for c in range(3)) for r in range(3)) for p in TETRA_POINTS} == tetra
    G4 = tetrahedral_rotation_group(4)
    assert all(M[3] == (0, 0, 0, 1) and all(M[r][3] == 0 for r in range(3)) for M in G4)


def test_action_on_shaded(S, action):
    assert len(action) == 12
    assert action.orbit_sizes == [4, 6, 12]
    assert sorted(action.orbits, key=len)[0] == ["B", "C", "D", "E"]


def test_action_fixing_apex():
    act = match_action(the_23_vertex_complex(), fixed="A", dim=4)
    assert all(g["A"] == "A" for g in act.perms)
    assert sorted(act.orbit_sizes) == [1, 4, 6, 12]


def test_no_action_on_asymmetric_complex():
    with pytest.raises(ComplexError):
        match_action(make_complex([["B", "C", "D"], ["D", "E"]]))


def test_search_small_boxes(S, action):
    coords, stats = search_coordinates(S, action, box=0)
    assert coords is None
    coords, stats = search_coordinates(S, action, box=1)
    assert coords is None and stats.exhausted


def test_search_box4(S, action):
    coords, stats = search_coordinates(S, action, box=4)
    assert coords is not None
    assert coords.max_abs() <= 4
    assert check_equivariance(coords, action)
    assert verify_embedding(S, coords).ok
    assert all(x.denominator == 1 for p in coords.assignment.values() for x in p)
    # determinism, and the shipped fixture is this result
    again, _ = search_coordinates(S, action, box=4)
    assert again == coords
    assert fixture("shaded-r3") == coords


def test_search_budget(S, action):
    coords, stats = search_coordinates(S, action, box=4, budget=3)
    assert coords is None and stats.budget_hit and not stats.exhausted


def test_equivariance_detects_tampering(action):
    c = fixture("shaded-r3")
    pts = dict(c.assignment)
    pts["F"] = (pts["F"][0] + 1,) + pts["F"][1:]
    assert not check_equivariance(Coordinates(3, pts), action)


def test_cone_realization():
    K = the_23_vertex_complex()
    c4, cert = cone_realization(K, fixture("shaded-r3"))
    assert cert.ok and cert.pairs == 153 * 152 // 2
    assert c4["A"] == (0, 0, 0, 1)
    assert all(c4[v][3] == 0 for v in K.vertices if v != "A")
    assert c4 == fixture("full-r4")
    # apex inside the model's hyperplane is not an embedding
    with pytest.raises(GeometryError):
        cone_realization(K, fixture("shaded-r3"), apex_point=(0, 0, 0, 0))


def test_export_off():
    T = make_complex([["A", "B", "C"]])
    c = Coordinates(3, {"A": (0, 0, 0), "B": (1, 0, 0), "C": (0, 1, 0)})
    assert export_off(T, c) == "OFF\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"
    S = shaded_complex()
    off = export_model(S, fixture("shaded-r3"), "OFF").splitlines()
    assert off[0] == "OFF" and off[1] == "22 30 54"
    assert len(off) == 2 + 22 + 30
    with pytest.raises(GeometryError):
        export_off(the_23_vertex_complex(), fixture("full-r4"))


def test_structured_text_roundtrip():
    c = fixture("full-r4")
    assert parse_coordinates(export_model(the_23_vertex_complex(), c)) == c
