"""Exact geometry: orientation, simplex intersection, embedding checks and
linking numbers.  Everything is done over :class:`fractions.Fraction`;
there is no floating point in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Mapping, Sequence

from . import kernels
from .complex import SimplicialComplex

Rational = Fraction
Point = tuple  # tuple of Fractions


class GeometryError(ValueError):
    pass


def point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


def _rank(rows: list[list[Fraction]]) -> int:
    M = [list(r) for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [list(r) for r in M]
    n, det = len(M), Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def orientation(points: Sequence[Sequence]) -> int:
    """Sign of det[p1 - p0, ..., pd - p0] for d+1 points in R^d."""
    pts = [point(p) for p in points]
    d = len(pts[0])
    if len(pts) != d + 1 or any(len(p) != d for p in pts):
        raise GeometryError("orientation needs d+1 points in R^d")
    det = _det([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]])
    return (det > 0) - (det < 0)


def affinely_independent(points: Sequence[Point]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) == len(points) - 1


@dataclass(frozen=True)
class GeomSimplex:
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts or len({len(p) for p in pts}) != 1:
            raise GeometryError("simplex needs points of one dimension")
        if len(pts) > len(pts[0]) + 1 or not affinely_independent(pts):
            raise GeometryError(f"affinely dependent points {pts}")

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def bbox(self):
        return (tuple(min(c) for c in zip(*self.points)), tuple(max(c) for c in zip(*self.points)))


@dataclass(frozen=True)
class Violation:
    witness: Point
    lam: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]


def _integer_rows(P, Q):
    """Scale each coordinate equation to integers (the unknowns are unchanged)."""
    d = len(P[0])
    Pi = [[0] * d for _ in P]
    Qi = [[0] * d for _ in Q]
    for c in range(d):
        m = lcm(*(p[c].denominator for p in list(P) + list(Q)))
        for i, p in enumerate(P):
            Pi[i][c] = int(p[c] * m)
        for j, q in enumerate(Q):
            Qi[j][c] = int(q[c] * m)
    return Pi, Qi


def simplex_pair_test(sigma: GeomSimplex, tau: GeomSimplex, shared: Iterable[tuple[int, int]] = (),
                      backend: str | None = None):
    """Decide ``conv(sigma) & conv(tau) == conv(shared vertices)``.

    ``shared`` lists index pairs ``(i, j)`` with ``sigma.points[i] ==
    tau.points[j]``.  Solves one exact LP maximizing the total barycentric
    weight on non-shared vertices; returns ``None`` (OK) or a
    :class:`Violation` carrying a rational witness point.
    """
    if sigma.dim != tau.dim:
        raise GeometryError("simplices live in different dimensions")
    shared = list(shared)
    for i, j in shared:
        if sigma.points[i] != tau.points[j]:
            raise GeometryError("shared vertices must coincide")
    si = {i for i, _ in shared}
    tj = {j for _, j in shared}
    if len(si) == len(sigma.points) or len(tj) == len(tau.points):
        return None  # one is a face of the other
    obj = [0 if i in si else 1 for i in range(len(sigma.points))]
    obj += [0 if j in tj else 1 for j in range(len(tau.points))]
    P, Q = _integer_rows(sigma.points, tau.points)
    res = kernels.intersect_lp(P, Q, obj, backend)
    if res is None or res[0] == 0:
        return None
    _, det, x = res
    a = len(sigma.points)
    lam = tuple(Fraction(v, det) for v in x[:a])
    mu = tuple(Fraction(v, det) for v in x[a:])
    w = tuple(sum(l * p[c] for l, p in zip(lam, sigma.points)) for c in range(sigma.dim))
    return Violation(w, lam, mu)


# -- embeddings ---------------------------------------------------------------


@dataclass
class Coordinates:
    dim: int
    assignment: dict[str, Point]

    def __post_init__(self):
        self.assignment = {v: point(p) for v, p in self.assignment.items()}
        for v, p in self.assignment.items():
            if len(p) != self.dim:
                raise GeometryError(f"point for {v} has dimension {len(p)}, expected {self.dim}")

    def __getitem__(self, v):
        return self.assignment[v]

    def __eq__(self, other):
        return isinstance(other, Coordinates) and self.dim == other.dim and self.assignment == other.assignment

    def max_abs(self) -> Fraction:
        return max((abs(c) for p in self.assignment.values() for c in p), default=Fraction(0))


@dataclass
class EmbeddingCertificate:
    ok: bool
    faces: int
    pairs: int
    pairs_tested: int
    violation: tuple | None = None  # (face1, face2, Violation)

    def __bool__(self):
        return self.ok


def _boxes_disjoint(b1, b2) -> bool:
    return any(h1 < l2 or h2 < l1 for l1, h1, l2, h2 in zip(b1[0], b1[1], b2[0], b2[1]))


def face_pair_violation(s, t, geo, backend=None):
    shared = [(i, t.index(v)) for i, v in enumerate(s) if v in t]
    return simplex_pair_test(geo[s], geo[t], shared, backend)


def verify_embedding(K: SimplicialComplex, coords: Coordinates, prefilter: bool = True,
                     faces: Sequence | None = None, against: Sequence | None = None,
                     backend: str | None = None) -> EmbeddingCertificate:
    """Check that ``coords`` is a linear embedding of ``K``.

    Every face must be non-degenerate and every unordered pair of faces
    must meet exactly in the hull of their common vertices.  Pairs with
    disjoint bounding boxes are skipped (their hulls cannot meet).  The
    first violation in lexicographic pair order is reported.

    ``faces``/``against`` restrict the check to pairs with one face from
    each list (used for incremental checking during search).
    """
    for v in K.vertices:
        if v not in coords.assignment:
            raise GeometryError(f"no coordinates for vertex {v}")
    allf = list(K.faces())
    geo = {}
    for s in allf:
        try:
            geo[s] = GeomSimplex(tuple(coords[v] for v in s))
        except GeometryError:
            return EmbeddingCertificate(False, len(allf), 0, 0, (s, s, None))
    # distinct vertices must get distinct points
    seen = {}
    for v in K.vertices:
        p = coords[v]
        if p in seen:
            s, t = (seen[p],), (v,)
            return EmbeddingCertificate(False, len(allf), 0, 0, (s, t, Violation(p, (Fraction(1),), (Fraction(1),))))
        seen[p] = v
    boxes = {s: geo[s].bbox() for s in allf}
    A = list(faces) if faces is not None else allf
    B = list(against) if against is not None else allf
    if faces is None and against is None:
        pairs = list(combinations(allf, 2))
    else:
        seenp, pairs = set(), []
        for s in A:
            for t in B:
                if s == t:
                    continue
                key = (s, t) if (len(s), s) < (len(t), t) else (t, s)
                if key not in seenp:
                    seenp.add(key)
                    pairs.append(key)
    tested = 0
    for s, t in pairs:
        if set(s) <= set(t) or set(t) <= set(s):
            continue
        if prefilter and _boxes_disjoint(boxes[s], boxes[t]):
            continue
        tested += 1
        v = face_pair_violation(s, t, geo, backend)
        if v is not None:
            return EmbeddingCertificate(False, len(allf), len(pairs), tested, (s, t, v))
    return EmbeddingCertificate(True, len(allf), len(pairs), tested)


# -- segments and curves --------------------------------------------------------


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def segments_intersect_3d(p0, p1, q0, q1) -> bool:
    """Exact closed-segment intersection test in R^3."""
    if {p0, p1} & {q0, q1}:
        return True
    if orientation([p0, p1, q0, q1]) != 0:
        return False
    return simplex_pair_test(GeomSimplex((p0, p1)), GeomSimplex((q0, q1))) is not None


@dataclass(frozen=True)
class PolygonalCurve:
    waypoints: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(point(p) for p in self.waypoints)
        object.__setattr__(self, "waypoints", pts)
        if len(pts) < 3 or any(len(p) != 3 for p in pts):
            raise GeometryError("a polygonal curve needs at least 3 points in R^3")
        n = len(pts)
        for i in range(n):
            if pts[i] == pts[(i + 1) % n]:
                raise GeometryError("consecutive waypoints coincide")
        if len(set(pts)) != n:
            raise GeometryError("curve is not simple")
        segs = self.segments()
        for i, j in combinations(range(n), 2):
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent: may only share the common endpoint
                a, b = segs[i], segs[j]
                common = set(a) & set(b)
                if _collinear_overlap(a, b, common):
                    raise GeometryError("curve folds back on itself")
                continue
            if segments_intersect_3d(*segs[i], *segs[j]):
                raise GeometryError("curve is not simple")

    def segments(self):
        n = len(self.waypoints)
        return [(self.waypoints[i], self.waypoints[(i + 1) % n]) for i in range(n)]

    def reversed(self) -> "PolygonalCurve":
        return PolygonalCurve(tuple(reversed(self.waypoints)))

    def transformed(self, M, shift=None) -> "PolygonalCurve":
        shift = shift or (0, 0, 0)
        return PolygonalCurve(tuple(
            tuple(sum(M[r][c] * p[c] for c in range(3)) + shift[r] for r in range(3))
            for p in self.waypoints))


def _plain(x):
    return x.numerator if x.denominator == 1 else x


def _sheared(C: PolygonalCurve, M):
    """Waypoints of ``C`` under a shear; invertible, so no re-validation."""
    return [tuple(_plain(sum(M[r][c] * p[c] for c in range(3))) for r in range(3))
            for p in C.waypoints]


def _collinear_overlap(a, b, common):
    (c,) = common
    u = _sub(a[0] if a[1] == c else a[1], c)
    v = _sub(b[0] if b[1] == c else b[1], c)
    cross = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    return cross == (0, 0, 0) and sum(x * y for x, y in zip(u, v)) > 0


class DegenerateProjection(Exception):
    pass


def _shears():
    """Fixed sequence of unimodular rational shears (x, y) += (a, b) * z."""
    yield ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    k = 1
    while True:
        a = Fraction(k, 2 * k + 7)
        b = Fraction(k + 2, 3 * k + 11)
        yield ((1, 0, a), (0, 1, b), (0, 0, 1))
        k += 1


def _closed_segments(pts):
    n = len(pts)
    return [(pts[i], pts[(i + 1) % n]) for i in range(n)]


def _signed_over_crossings(P1, P2) -> int:
    total = 0
    segs2 = _closed_segments(P2)
    for p0, p1 in _closed_segments(P1):
        for q0, q1 in segs2:
            d = _sub(p1, p0)
            e = _sub(q1, q0)
            o1 = _cross2(_sub(q0, p0), d)
            o2 = _cross2(_sub(q1, p0), d)
            o3 = _cross2(_sub(p0, q0), e)
            o4 = _cross2(_sub(p1, q0), e)
            if 0 in (o1, o2, o3, o4):
                if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0) or (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
                    continue  # projections clearly apart
                raise DegenerateProjection
            if (o1 > 0) == (o2 > 0) or (o3 > 0) == (o4 > 0):
                continue
            den = _cross2(d, e)
            w = _sub(q0, p0)
            t = Fraction(_cross2(w, e), den)
            u = Fraction(_cross2(w, d), den)
            z1 = p0[2] + t * d[2]
            z2 = q0[2] + u * e[2]
            if z1 == z2:
                raise GeometryError("curves intersect")
            if z1 > z2:
                total += 1 if den > 0 else -1
    return total


def _xy_apart(C1: PolygonalCurve, C2: PolygonalCurve) -> bool:
    for k in (0, 1):
        a = [p[k] for p in C1.waypoints]
        b = [p[k] for p in C2.waypoints]
        if max(a) < min(b) or max(b) < min(a):
            return True
    return False


def linking_number(C1: PolygonalCurve, C2: PolygonalCurve, max_tries: int = 64,
                   check_disjoint: bool = True) -> int:
    """Linking number from the signed crossings where ``C1`` passes over ``C2``
    in the projection to the first two coordinates.  Degenerate projections
    are resolved by the fixed shear sequence of :func:`_shears`.

    ``check_disjoint=False`` skips the pairwise segment test; only for curves
    known to be disjoint (vertex-disjoint cycles of a certified embedding).
    """
    if check_disjoint:
        for s1 in C1.segments():
            for s2 in C2.segments():
                if segments_intersect_3d(*s1, *s2):
                    raise GeometryError("curves intersect; linking number undefined")
    if _xy_apart(C1, C2):
        return 0
    for n, M in enumerate(_shears()):
        if n >= max_tries:
            break
        try:
            return _signed_over_crossings(_sheared(C1, M), _sheared(C2, M))
        except DegenerateProjection:
            continue
    raise GeometryError("no generic projection found")


# -- cycle search -------------------------------------------------------------


def simple_cycles(adj: Mapping[str, Iterable[str]], max_len: int) -> list[tuple[str, ...]]:
    """Simple cycles (length >= 3) of an undirected graph, each once.

    A cycle is listed starting at its smallest vertex, in the direction in
    which the second vertex is smaller than the last.  Sorted by length,
    then lexicographically.
    """
    nbrs = {v: sorted(ws) for v, ws in adj.items()}
    out = []
    for s in sorted(nbrs):
        path = [s]
        onpath = {s}

        def dfs(v):
            for w in nbrs[v]:
                if w == s and len(path) >= 3:
                    if path[1] < path[-1]:
                        out.append(tuple(path))
                    continue
                if w <= s or w in onpath or len(path) >= max_len:
                    continue
                path.append(w)
                onpath.add(w)
                dfs(w)
                path.pop()
                onpath.discard(w)

        dfs(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def induced_adjacency(K: SimplicialComplex, vertices) -> dict[str, set]:
    vs = set(vertices)
    adj = {v: set() for v in vs}
    for a, b in K.faces(1):
        if a in vs and b in vs:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def find_linked_cycle_pair(K: SimplicialComplex, coords: Coordinates, side_a, max_len: int = 6,
                           max_len_b: int | None = None):
    """First pair of vertex-disjoint cycles of ``K`` with non-zero linking number.

    ``coords`` must be a certified embedding of ``K``, so vertex-disjoint
    cycles are disjoint curves.

    The first cycle runs in the subgraph induced by ``side_a``, the second in
    the subgraph induced by the complement of ``side_a``.  When ``side_a``
    covers every vertex (the link of the apex in the shaded complex does),
    the second cycle may use any vertex not on the first one.  Cycles are
    tried shortest first.  Returns ``(cycle1, cycle2, lk)`` or ``None``.
    """
    if coords.dim != 3:
        raise GeometryError("linking numbers need coordinates in R^3")
    side_a = set(side_a)
    cyc_a = simple_cycles(induced_adjacency(K, side_a), max_len)
    rest = [v for v in K.vertices if v not in side_a]
    pool = rest if rest else list(K.vertices)
    cyc_b = simple_cycles(induced_adjacency(K, pool), max_len_b or max_len)
    curves = {}

    def curve(c):
        if c not in curves:
            curves[c] = PolygonalCurve(tuple(coords[v] for v in c))
        return curves[c]

    for c1 in cyc_a:
        s1 = set(c1)
        for c2 in cyc_b:
            if s1.isdisjoint(c2):
                lk = linking_number(curve(c1), curve(c2), check_disjoint=False)
                if lk:
                    return c1, c2, lk
    return None
