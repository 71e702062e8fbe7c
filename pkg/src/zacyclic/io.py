"""Text formats.

Complex file::

    vertices: A B C ...
    facet: A B C
    polygon: A B C D E      # cyclic 2-cell, polyhedral complexes only

Coordinates file (also used for curves, waypoints in line order)::

    dim: 3
    A: 0 0 1
    F: 1/2 -3 4

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from fractions import Fraction

from .complex import ComplexError, SimplicialComplex
from .constructions import PolyhedralComplex, _edges_of
from .geometry import Coordinates, GeometryError


class FormatError(ValueError):
    pass


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            if ":" not in line:
                raise FormatError(f"line {n}: expected 'key: values'")
            key, _, rest = line.partition(":")
            yield n, key.strip(), rest.split()


def format_complex(K: SimplicialComplex) -> str:
    out = ["vertices: " + " ".join(K.vertices)]
    out += ["facet: " + " ".join(f) for f in K.facets]
    return "\n".join(out) + "\n"


def format_polyhedral(P: PolyhedralComplex) -> str:
    out = ["vertices: " + " ".join(P.vertices)]
    out += ["polygon: " + " ".join(p) for p in P.polygons]
    return "\n".join(out) + "\n"


def parse_complex(text: str):
    """Return a :class:`SimplicialComplex`, or a :class:`PolyhedralComplex`
    when the file has ``polygon`` lines."""
    vertices, facets, polygons = None, [], []
    for n, key, vals in _lines(text):
        if key == "vertices":
            if vertices is not None:
                raise FormatError(f"line {n}: duplicate vertices line")
            vertices = vals
        elif key == "facet":
            facets.append(vals)
        elif key == "polygon":
            polygons.append(tuple(vals))
        else:
            raise FormatError(f"line {n}: unknown key {key!r}")
    if vertices is None:
        raise FormatError("missing 'vertices' line")
    if len(set(vertices)) != len(vertices):
        raise FormatError("repeated vertex in 'vertices' line")
    if facets and polygons:
        raise FormatError("a file holds either facets or polygons")
    known = set(vertices)
    for cell in facets + polygons:
        bad = [v for v in cell if v not in known]
        if bad:
            raise FormatError(f"undeclared vertices {bad}")
    if polygons:
        edges, boundaries = _edges_of(polygons)
        P = PolyhedralComplex(list(vertices), edges, polygons, boundaries)
        try:
            P.validate()
        except ComplexError as e:
            raise FormatError(str(e)) from e
        return P
    try:
        K = SimplicialComplex(facets + [[v] for v in vertices])
    except ComplexError as e:
        raise FormatError(str(e)) from e
    return K


def format_coordinates(coords: Coordinates, order=None) -> str:
    order = order or sorted(coords.assignment)
    out = [f"dim: {coords.dim}"]
    for v in order:
        p = coords[v]
        out.append(f"{v}: " + " ".join(str(c) if c.denominator != 1 else str(c.numerator) for c in p))
    return "\n".join(out) + "\n"


def parse_coordinates(text: str) -> Coordinates:
    dim, pts = None, {}
    for n, key, vals in _lines(text):
        if key == "dim":
            if len(vals) != 1 or not vals[0].isdigit():
                raise FormatError(f"line {n}: bad dim")
            dim = int(vals[0])
            continue
        if key in pts:
            raise FormatError(f"line {n}: duplicate vertex {key}")
        try:
            pts[key] = tuple(Fraction(v) for v in vals)
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"line {n}: bad number ({e})") from e
    if dim is None:
        raise FormatError("missing 'dim' line")
    try:
        return Coordinates(dim, pts)
    except GeometryError as e:
        raise FormatError(str(e)) from e


def read_complex(path):
    with open(path) as fh:
        return parse_complex(fh.read())


def read_coordinates(path) -> Coordinates:
    with open(path) as fh:
        return parse_coordinates(fh.read())
