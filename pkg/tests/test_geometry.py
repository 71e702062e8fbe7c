from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.optimize import linprog

from zacyclic import kernels
from zacyclic.complex import make_complex
from zacyclic.geometry import (
    Coordinates, GeomSimplex, GeometryError, PolygonalCurve, affinely_independent, linking_number,
    orientation, segments_intersect_3d, simple_cycles, simplex_pair_test, verify_embedding,
)
from zacyclic.io import read_coordinates

FIX = Path(__file__).parent / "fixtures"
coord = st.integers(-3, 3)
pt3 = st.tuples(coord, coord, coord)


def curve(name):
    return PolygonalCurve(tuple(read_coordinates(FIX / name).assignment.values()))


# -- independent oracles --------------------------------------------------------


def lp_oracle(P, Q, shared):
    """Float LP (HiGHS): max weight on non-shared vertices over the intersection."""
    a, b = len(P), len(Q)
    si, tj = {i for i, _ in shared}, {j for _, j in shared}
    c = -np.array([0 if i in si else 1 for i in range(a)] + [0 if j in tj else 1 for j in range(b)], float)
    d = len(P[0])
    A = np.zeros((d + 2, a + b))
    for k in range(d):
        A[k, :a] = [float(p[k]) for p in P]
        A[k, a:] = [-float(q[k]) for q in Q]
    A[d, :a] = 1
    A[d + 1, a:] = 1
    rhs = np.array([0] * d + [1, 1], float)
    res = linprog(c, A_eq=A, b_eq=rhs, bounds=[(0, None)] * (a + b), method="highs")
    if res.status == 2:
        return False
    return -res.fun > 1e-7


def seg_tri_oracle(p, q, a, b, c):
    """Orientation test for a segment against a triangle in general position."""
    s1, s2 = orientation([a, b, c, p]), orientation([a, b, c, q])
    if s1 == s2:
        return False
    t = [orientation([p, q, a, b]), orientation([p, q, b, c]), orientation([p, q, c, a])]
    return len(set(t)) == 1


# -- predicates -------------------------------------------------------------------


def test_orientation_and_independence():
    assert orientation([(0, 0), (1, 0), (0, 1)]) == 1
    assert orientation([(0, 0), (0, 1), (1, 0)]) == -1
    assert orientation([(0, 0), (1, 1), (2, 2)]) == 0
    assert affinely_independent([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert not affinely_independent([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    with pytest.raises(GeometryError):
        GeomSimplex(((0, 0, 0), (1, 1, 1), (2, 2, 2)))


def test_pair_test_examples():
    T1 = GeomSimplex(((0, 0, 0), (2, 0, 0), (0, 2, 0)))
    S = GeomSimplex(((1, 1, -1), (0, 0, 1)))
    v = simplex_pair_test(T1, S)
    assert v is not None
    assert v.witness == (Fraction(1, 2), Fraction(1, 2), Fraction(0))
    far = GeomSimplex(((5, 5, 5), (6, 5, 5)))
    assert simplex_pair_test(T1, far) is None
    # sharing an edge and lying in different planes: fine
    T2 = GeomSimplex(((0, 0, 0), (2, 0, 0), (0, 0, 2)))
    assert simplex_pair_test(T1, T2, shared=[(0, 0), (1, 1)]) is None
    # sharing an edge but folded onto each other: overlap beyond the edge
    T3 = GeomSimplex(((0, 0, 0), (2, 0, 0), (1, 1, 0)))
    assert simplex_pair_test(T1, T3, shared=[(0, 0), (1, 1)]) is not None


def test_rational_coordinates():
    T = GeomSimplex(((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    S = GeomSimplex(((Fraction(1, 3), Fraction(1, 3), Fraction(-1, 7)), (Fraction(1, 3), Fraction(1, 3), Fraction(1, 5))))
    v = simplex_pair_test(T, S)
    assert v.witness == (Fraction(1, 3), Fraction(1, 3), 0)


@given(st.lists(pt3, min_size=3, max_size=3, unique=True), st.lists(pt3, min_size=1, max_size=3, unique=True))
def test_pair_test_matches_lp_oracle(P, Q):
    assume(affinely_independent(P) and affinely_independent(Q))
    assume(not set(P) & set(Q))
    got = simplex_pair_test(GeomSimplex(tuple(P)), GeomSimplex(tuple(Q))) is not None
    assert got == lp_oracle(P, Q, [])


@given(st.lists(pt3, min_size=4, max_size=4, unique=True), st.integers(1, 2), st.data())
def test_pair_test_with_shared_vertices_matches_oracle(pts, k, data):
    extra = data.draw(st.lists(pt3, min_size=1, max_size=3 - k, unique=True))
    P = pts[:3]
    Q = P[:k] + [x for x in extra if x not in pts]
    assume(len(Q) > k)
    assume(affinely_independent(P) and affinely_independent(Q))
    shared = [(i, i) for i in range(k)]
    got = simplex_pair_test(GeomSimplex(tuple(P)), GeomSimplex(tuple(Q)), shared) is not None
    assert got == lp_oracle(P, Q, shared)


@given(st.lists(pt3, min_size=5, max_size=5, unique=True))
def test_segment_triangle_matches_orientation_oracle(pts):
    p, q, a, b, c = pts
    assume(all(orientation(list(f)) != 0 for f in combinations(pts, 4)))
    got = simplex_pair_test(GeomSimplex((a, b, c)), GeomSimplex((p, q))) is not None
    assert got == seg_tri_oracle(p, q, a, b, c)


@given(st.lists(pt3, min_size=4, max_size=4, unique=True))
def test_segment_intersection_symmetric(pts):
    p0, p1, q0, q1 = pts
    assert segments_intersect_3d(p0, p1, q0, q1) == segments_intersect_3d(q0, q1, p1, p0)


@pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled kernel not built")
@given(st.lists(pt3, min_size=1, max_size=4, unique=True), st.lists(pt3, min_size=1, max_size=4, unique=True))
def test_backends_agree(P, Q):
    obj = [1] * (len(P) + len(Q))
    assert kernels.intersect_lp(P, Q, obj, "compiled") == kernels.intersect_lp(P, Q, obj, "python")


def test_compiled_kernel_overflow_falls_back():
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled kernel not built")
    big = 10**30
    P = [(0, 0, 0), (big, 0, 0), (0, big, 0)]
    Q = [(1, 1, -big), (1, 1, big)]
    assert kernels.intersect_lp(P, Q, [1] * 5, "compiled") == kernels.intersect_lp(P, Q, [1] * 5, "python")


# -- embeddings -------------------------------------------------------------------


def test_verify_embedding_examples():
    K = make_complex([["a", "b", "c"], ["a", "b", "d"]])
    good = Coordinates(3, {"a": (0, 0, 0), "b": (1, 0, 0), "c": (0, 1, 0), "d": (0, 0, 1)})
    assert verify_embedding(K, good).ok
    folded = Coordinates(3, {"a": (0, 0, 0), "b": (2, 0, 0), "c": (0, 2, 0), "d": (1, 1, 0)})
    cert = verify_embedding(K, folded)
    assert not cert.ok
    flat = Coordinates(3, {"a": (0, 0, 0), "b": (1, 0, 0), "c": (2, 0, 0), "d": (0, 0, 1)})
    assert not verify_embedding(K, flat).ok
    with pytest.raises(GeometryError):
        verify_embedding(K, Coordinates(3, {"a": (0, 0, 0)}))


def test_first_violation_is_lexicographic():
    # two crossing edges plus a separate crossing later in order
    K = make_complex([["a", "b"], ["c", "d"], ["x", "y"], ["z", "w"]])
    c = Coordinates(2, {"a": (0, 0), "b": (2, 2), "c": (0, 2), "d": (2, 0),
                        "x": (10, 10), "y": (12, 12), "z": (10, 12), "w": (12, 10)})
    s, t, _ = verify_embedding(K, c).violation
    assert (s, t) == (("a", "b"), ("c", "d"))


@st.composite
def small_models(draw):
    K = make_complex(draw(st.lists(st.lists(st.sampled_from("abcdef"), min_size=1, max_size=3, unique=True),
                                   min_size=1, max_size=6)))
    pts = draw(st.lists(pt3, min_size=len(K.vertices), max_size=len(K.vertices), unique=True))
    return K, Coordinates(3, dict(zip(K.vertices, pts)))


@given(small_models())
def test_prefilter_is_sound(model):
    K, c = model
    a = verify_embedding(K, c, prefilter=True)
    b = verify_embedding(K, c, prefilter=False)
    assert a.ok == b.ok
    assert a.violation == b.violation


@given(small_models())
def test_verdict_matches_lp_oracle(model):
    K, c = model
    faces = K.faces()
    bad = False
    for s in faces:
        if not affinely_independent([c[v] for v in s]):
            bad = True
    if not bad:
        for s, t in combinations(faces, 2):
            if set(s) <= set(t) or set(t) <= set(s):
                continue
            P, Q = [c[v] for v in s], [c[v] for v in t]
            shared = [(s.index(v), t.index(v)) for v in set(s) & set(t)]
            if lp_oracle(P, Q, shared):
                bad = True
                break
    assert verify_embedding(K, c).ok == (not bad)


# -- curves -------------------------------------------------------------------------


def test_hopf_and_split():
    A, B, S = curve("hopf-a"), curve("hopf-b"), curve("split-b")
    assert abs(linking_number(A, B)) == 1
    assert linking_number(A, S) == 0


def test_linking_degenerate_projection():
    # a vertical segment projects to a point: needs the shear fallback
    A = PolygonalCurve(((-1, -1, 0), (1, -1, 0), (1, 1, 0), (-1, 1, 0)))
    B = PolygonalCurve(((0, 0, -1), (0, 0, 1), (3, 0, 1), (3, 0, -1)))
    assert abs(linking_number(A, B)) == 1


def test_curve_validation():
    with pytest.raises(GeometryError):
        PolygonalCurve(((0, 0, 0), (1, 0, 0)))
    with pytest.raises(GeometryError):
        PolygonalCurve(((0, 0, 0), (2, 0, 0), (2, 2, 0), (0, -1, 0), (1, 1, 0)))  # self-crossing
    with pytest.raises(GeometryError):
        linking_number(curve("hopf-a"), PolygonalCurve(((1, 0, 0), (1, 0, 1), (0, 0, 1))))  # touches an edge


rotations = st.sampled_from([
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((0, -1, 0), (1, 0, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 0, -1), (0, 1, 0)), ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((2, 1, 0), (1, 1, 0), (0, 0, 1)), ((1, 0, 3), (0, 1, -2), (0, 0, 1)),
])


@given(rotations, pt3, st.booleans(), st.booleans())
def test_linking_number_invariances(M, shift, ra, rb):
    A, B = curve("hopf-a"), curve("hopf-b")
    base = linking_number(A, B)
    A2, B2 = A.transformed(M, shift), B.transformed(M, shift)
    if ra:
        A2 = A2.reversed()
    if rb:
        B2 = B2.reversed()
    sign = (-1) ** (ra + rb)
    assert linking_number(A2, B2) == sign * base
    assert linking_number(B2, A2) == sign * base


@given(st.lists(pt3, min_size=4, max_size=6, unique=True), st.lists(pt3, min_size=3, max_size=5, unique=True))
def test_linking_symmetric_on_random_curves(P, Q):
    try:
        A, B = PolygonalCurve(tuple(P)), PolygonalCurve(tuple(Q))
        lk = linking_number(A, B)
    except GeometryError:
        assume(False)
    assert linking_number(B, A) == lk
    assert linking_number(A.reversed(), B) == -lk


def test_simple_cycles():
    adj = {"a": {"b", "c", "d"}, "b": {"a", "c", "d"}, "c": {"a", "b", "d"}, "d": {"a", "b", "c"}}
    cyc = simple_cycles(adj, 4)
    assert len(cyc) == 7  # four triangles, three squares
    assert cyc[0] == ("a", "b", "c")
    assert simple_cycles(adj, 3) == cyc[:4]


def test_oracle_agreement_sweep_covers_both_verdicts():
    import random

    rng = random.Random(20261018)
    seen = {True: 0, False: 0}
    for _ in range(400):
        P = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)]
        Q = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        if len(set(P + Q)) < len(P + Q) or not (affinely_independent(P) and affinely_independent(Q)):
            continue
        got = simplex_pair_test(GeomSimplex(tuple(P)), GeomSimplex(tuple(Q))) is not None
        assert got == lp_oracle(P, Q, [])
        seen[got] += 1
    assert seen[True] > 20 and seen[False] > 20


def test_backend_selection_at_import():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ZACYCLIC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import zacyclic.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pair_test_worked_examples():
    v = simplex_pair_test(GeomSimplex(((0, 0), (2, 2))), GeomSimplex(((0, 2), (2, 0))))
    assert v is not None and v.witness == (1, 1)
    T1 = GeomSimplex(((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)))
    T2 = GeomSimplex(((0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1)))
    assert simplex_pair_test(T1, T2) is None
    A = GeomSimplex(((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    B = GeomSimplex(((0, 0, 0), (1, 0, 0), (0, -1, 1)))
    assert simplex_pair_test(A, B, shared=[(0, 0), (1, 1)]) is None


@given(st.lists(pt3, min_size=4, max_size=4))
def test_orientation_swap_flips_sign(pts):
    assert orientation([pts[1], pts[0]] + pts[2:]) == -orientation(pts)
