"""The specific complexes: dodecahedral quotients, the 23-vertex complex,
the shaded complex, the dunce hat and cones over non-planar graphs.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .complex import ComplexError, SimplicialComplex, cone, remove_star
from .homology import zeros


@dataclass
class PolyhedralComplex:
    """A 2-dimensional cell complex whose 2-cells are polygons.

    ``edges[i] = (tail, head)``; loops and parallel edges are allowed so
    that non-simplicial quotients can be represented.  ``polygons[p]`` is
    the cyclic vertex sequence and ``boundaries[p]`` the matching list of
    ``(edge index, +1/-1)`` read along that cycle.
    """

    vertices: list[str]
    edges: list[tuple[str, str]]
    polygons: list[tuple[str, ...]]
    boundaries: list[list[tuple[int, int]]] = field(default_factory=list)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.polygons)

    @property
    def euler_characteristic(self) -> int:
        v, e, f = self.counts
        return v - e + f

    def edge_set(self) -> set[frozenset]:
        return {frozenset(e) for e in self.edges}

    def is_simplicial_graph(self) -> bool:
        """No loops, no parallel edges."""
        return all(a != b for a, b in self.edges) and len(self.edge_set()) == len(self.edges)

    def chain_complex(self):
        vidx = {v: i for i, v in enumerate(self.vertices)}
        d1 = zeros(len(self.vertices), len(self.edges))
        for j, (a, b) in enumerate(self.edges):
            d1[vidx[b]][j] += 1
            d1[vidx[a]][j] -= 1
        d2 = zeros(len(self.edges), len(self.polygons))
        for j, bd in enumerate(self.boundaries):
            for e, s in bd:
                d2[e][j] += s
        return list(self.counts), [zeros(0, len(self.vertices)), d1, d2]

    def validate(self):
        es = self.edge_set()
        for poly, bd in zip(self.polygons, self.boundaries):
            if len(poly) < 3:
                raise ComplexError(f"polygon {poly} too short")
            for i, (e, s) in enumerate(bd):
                a, b = self.edges[e] if s > 0 else self.edges[e][::-1]
                if (a, b) != (poly[i], poly[(i + 1) % len(poly)]):
                    raise ComplexError(f"polygon {poly} does not match its edge word")
        used = {e for bd in self.boundaries for e, _ in bd}
        if used != set(range(len(self.edges))):
            raise ComplexError("edge not on any polygon")
        return es


def dodecahedron() -> PolyhedralComplex:
    """Regular dodecahedron: top pentagon t, rings u/l, bottom pentagon b.

    Angles: t_i, u_i at 72i degrees, l_i, b_i at 72i+36.  Faces are
    oriented consistently (each edge is traversed once in each direction).
    """
    t = [f"t{i}" for i in range(5)]
    u = [f"u{i}" for i in range(5)]
    lo = [f"l{i}" for i in range(5)]
    b = [f"b{i}" for i in range(5)]
    faces = [tuple(t)]
    for i in range(5):
        j = (i + 1) % 5
        faces.append((t[j], t[i], u[i], lo[i], u[j]))
    for i in range(5):
        j = (i + 1) % 5
        faces.append((lo[i], b[i], b[j], lo[j], u[j]))
    faces.append(tuple(reversed(b)))
    _check_oriented(faces)
    verts = t + u + lo + b
    edges, boundaries = _edges_of(faces)
    return PolyhedralComplex(verts, edges, faces, boundaries)


def _check_oriented(faces):
    seen = set()
    for f in faces:
        for i in range(len(f)):
            d = (f[i], f[(i + 1) % len(f)])
            if d in seen:
                raise ComplexError("faces are not coherently oriented")
            seen.add(d)
    for a, b in seen:
        if (b, a) not in seen:
            raise ComplexError("surface has boundary")


def _edges_of(faces):
    edges, index, boundaries = [], {}, []
    for f in faces:
        bd = []
        for i in range(len(f)):
            a, b = f[i], f[(i + 1) % len(f)]
            key = frozenset((a, b))
            if key not in index:
                index[key] = len(edges)
                edges.append((a, b))
            e = index[key]
            bd.append((e, 1 if edges[e] == (a, b) else -1))
        boundaries.append(bd)
    return edges, boundaries


def antipode(v: str) -> str:
    """Antipodal vertex of the dodecahedron built by :func:`dodecahedron`."""
    ring, i = v[0], int(v[1:])
    return {"t": f"b{(i + 2) % 5}", "u": f"l{(i + 2) % 5}",
            "l": f"u{(i + 3) % 5}", "b": f"t{(i + 3) % 5}"}[ring]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller representative wins: deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def weber_seifert_quotient(twist: int = 1) -> PolyhedralComplex:
    """Identified boundary of the dodecahedron, i.e. the 2-skeleton of a
    dodecahedral space.

    Each face is glued to the opposite face by the antipodal map followed by
    a rotation through ``twist * pi/5`` (as seen against the translation
    that carries the face onto its opposite).  Vertices only match for odd
    ``twist``: 1 gives the spherical (Poincare) space, 3 the hyperbolic
    Seifert-Weber space and 5 the projective space.

    Vertex classes are labelled A, B, ... following the cycle of the first
    face, so that face reads A-B-C-D-E in the spherical case.
    """
    if twist not in range(1, 6):
        raise ComplexError(f"twist must be in 1..5, got {twist}")
    if twist % 2 == 0:
        raise ComplexError(
            f"twist {twist} rotates by {twist}*pi/5, which does not carry the vertices "
            "of a pentagon onto the vertices of the opposite pentagon"
        )
    shift = ((twist + 5) // 2) % 5
    D = dodecahedron()
    vuf, euf = _UnionFind(), _UnionFind()
    for f in D.polygons:
        image = [antipode(v) for v in f]
        k = len(f)
        for i in range(k):
            vuf.union(f[i], image[(i + shift) % k])
            euf.union(frozenset((f[i], f[(i + 1) % k])),
                      frozenset((image[(i + shift) % k], image[(i + shift + 1) % k])))
    # orientation consistency: each edge class must be identified respecting direction
    for f in D.polygons:
        image = [antipode(v) for v in f]
        for i in range(5):
            a, b = f[i], f[(i + 1) % 5]
            c, d = image[(i + shift) % 5], image[(i + shift + 1) % 5]
            if (vuf.find(a), vuf.find(b)) != (vuf.find(c), vuf.find(d)):
                raise ComplexError("face identification is not orientation consistent")

    first = D.polygons[0]
    labels: dict[str, str] = {}
    for v in list(first) + sorted(D.vertices):
        r = vuf.find(v)
        if r not in labels:
            labels[r] = _label(len(labels))
    vname = lambda v: labels[vuf.find(v)]

    # one representative face per pair; faces are paired with their antipodes
    seen_faces, reps = set(), []
    for f in D.polygons:
        key = frozenset(f)
        if key in seen_faces:
            continue
        seen_faces.add(key)
        seen_faces.add(frozenset(antipode(v) for v in f))
        reps.append(f)

    edge_ids: dict = {}
    edges: list[tuple[str, str]] = []
    for f in D.polygons:
        for i in range(5):
            a, b = f[i], f[(i + 1) % 5]
            r = euf.find(frozenset((a, b)))
            if r not in edge_ids:
                edge_ids[r] = len(edges)
                edges.append((a, b))
    # orient each edge class by its first representative
    polygons, boundaries = [], []
    for f in reps:
        bd = []
        for i in range(5):
            a, b = f[i], f[(i + 1) % 5]
            e = edge_ids[euf.find(frozenset((a, b)))]
            ta, tb = edges[e]
            same = (vuf.find(ta), vuf.find(tb)) == (vuf.find(a), vuf.find(b))
            if vuf.find(ta) == vuf.find(tb):
                # loop: decide direction through the dodecahedron edge pairing
                same = _loop_direction(D, euf, vuf, shift, (ta, tb), (a, b))
            bd.append((e, 1 if same else -1))
        polygons.append(tuple(vname(v) for v in f))
        boundaries.append(bd)
    P = PolyhedralComplex(
        sorted(set(labels.values()), key=_label_key),
        [(vname(a), vname(b)) for a, b in edges],
        polygons,
        boundaries,
    )
    P.validate()
    return P


def _loop_direction(D, euf, vuf, shift, ref, edge):
    """Whether directed dodecahedron edge ``edge`` is glued onto directed ``ref``.

    Directed edges are propagated through the gluing maps by BFS.
    """
    maps = {}
    for f in D.polygons:
        image = [antipode(v) for v in f]
        for i in range(5):
            src = (f[i], f[(i + 1) % 5])
            dst = (image[(i + shift) % 5], image[(i + shift + 1) % 5])
            maps.setdefault(src, set()).add(dst)
            maps.setdefault(src[::-1], set()).add(dst[::-1])
            maps.setdefault(dst, set()).add(src)
            maps.setdefault(dst[::-1], set()).add(src[::-1])
    seen, queue = {ref}, deque([ref])
    while queue:
        x = queue.popleft()
        for y in maps.get(x, ()):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if edge in seen:
        return True
    if edge[::-1] in seen:
        return False
    raise ComplexError("edge not in the class of its representative")


def _label(i: int) -> str:
    letters = string.ascii_uppercase
    return letters[i] if i < 26 else f"{letters[i % 26]}{i // 26}"


def _label_key(s: str):
    return (len(s), s)


def canonical_cycle(cycle, start):
    """Rotate ``cycle`` to begin at ``start``; choose the lexicographically
    smaller of the two reading directions."""
    k = cycle.index(start)
    fwd = tuple(cycle[k:]) + tuple(cycle[:k])
    bwd = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, bwd)


def subdivide_pentagons(P: PolyhedralComplex, apex: str = "A", fresh_labels=None) -> SimplicialComplex:
    """Triangulate every pentagon with three new interior vertices.

    With the pentagon read as (apex, v2, v3, v4, v5) and new vertices
    u1, u2, u3, the apex gets the fan {apex,v2,u1}, {apex,u1,u2},
    {apex,u2,u3}, {apex,u3,v5}; the remaining five triangles
    {u1,v2,v3}, {u1,v3,u2}, {u2,v3,v4}, {u2,v4,u3}, {u3,v4,v5} form a strip
    along the path v2-v3-v4-v5.  New labels are handed out pentagon by
    pentagon in the order of the canonical boundary words.
    """
    return SimplicialComplex(subdivision_parents(P, apex, fresh_labels))


def subdivision_parents(P: PolyhedralComplex, apex: str = "A", fresh_labels=None) -> dict:
    """Triangles of :func:`subdivide_pentagons` mapped to their parent polygon index."""
    if not P.is_simplicial_graph():
        raise ComplexError("1-skeleton is not simplicial")
    words = []
    for i, poly in enumerate(P.polygons):
        if len(poly) != 5:
            raise ComplexError(f"polygon {poly} is not a pentagon")
        if apex not in poly:
            raise ComplexError(f"polygon {poly} does not contain {apex}")
        if len(set(poly)) != 5:
            raise ComplexError(f"polygon {poly} has repeated vertices")
        words.append((canonical_cycle(poly, apex), i))
    words.sort()
    if fresh_labels is None:
        used = set(P.vertices)
        fresh_labels = (x for x in (_label(i) for i in range(10_000)) if x not in used)
    fresh = iter(fresh_labels)
    parents = {}
    for (a, v2, v3, v4, v5), idx in words:
        u1, u2, u3 = next(fresh), next(fresh), next(fresh)
        for t in [
            (a, v2, u1), (a, u1, u2), (a, u2, u3), (a, u3, v5),
            (u1, v2, v3), (u1, v3, u2), (u2, v3, v4), (u2, v4, u3), (u3, v4, v5),
        ]:
            parents[tuple(sorted(t))] = idx
    return parents


def the_23_vertex_complex() -> SimplicialComplex:
    return subdivide_pentagons(weber_seifert_quotient(1), "A")


def shaded_complex() -> SimplicialComplex:
    return remove_star(the_23_vertex_complex(), "A")


def complete_graph(n: int, prefix: str = "") -> SimplicialComplex:
    vs = [f"{prefix}{i}" for i in range(n)]
    return SimplicialComplex(combinations(vs, 2))


def complete_bipartite_graph(m: int, n: int) -> SimplicialComplex:
    return SimplicialComplex((f"a{i}", f"b{j}") for i in range(m) for j in range(n))


def cone_over_graph(name: str) -> SimplicialComplex:
    graphs = {"K5": lambda: complete_graph(5, "v"), "K33": lambda: complete_bipartite_graph(3, 3)}
    if name not in graphs:
        raise ComplexError(f"unknown graph {name!r}; choose from {sorted(graphs)}")
    return cone(graphs[name](), "apex")


# -- dunce hat -----------------------------------------------------------------


def _dunce_hat_attempt(rings: int) -> SimplicialComplex | None:
    """Disc with a 9-gon boundary, ``rings`` concentric 9-gons inside and a
    centre; boundary identified along a . a . a^-1."""
    # boundary: corners X0, X1, X2, each side split into three segments
    # the arc a runs v -> p -> q -> v; sides read a, a, a^-1
    boundary = ["v", "p", "q"] + ["v", "p", "q"] + ["v", "q", "p"]
    n = len(boundary)
    layers = [boundary]
    for r in range(rings):
        layers.append([f"c{r}_{i}" for i in range(n)])
    tris = []
    for outer, inner in zip(layers, layers[1:]):
        for i in range(n):
            j = (i + 1) % n
            tris.append((outer[i], outer[j], inner[i]))
            tris.append((outer[j], inner[j], inner[i]))
    centre = "o"
    last = layers[-1]
    for i in range(n):
        tris.append((last[i], last[(i + 1) % n], centre))
    # validity of the quotient: no degenerate triangles, no two distinct disc
    # simplices with the same vertex set except the identified boundary arcs
    for t in tris:
        if len(set(t)) < 3:
            return None
    bd_segments = {frozenset((boundary[i], boundary[(i + 1) % n])) for i in range(n)}
    edge_owner = {}
    for t in tris:
        for a, b in combinations(t, 2):
            key = frozenset((a, b))
            if key in bd_segments:
                continue
            edge_owner.setdefault(key, set()).add(t)
    if any(len(ts) > 2 for ts in edge_owner.values()):
        return None
    if len({frozenset(t) for t in tris}) != len(tris):
        return None
    return SimplicialComplex(tris)


def dunce_hat() -> SimplicialComplex:
    for rings in range(1, 5):
        K = _dunce_hat_attempt(rings)
        if K is not None:
            return K
    raise ComplexError("could not triangulate the dunce hat")


BUILDERS = {
    "dodecahedral-quotient": None,  # polyhedral; handled by the CLI
    "complex23": the_23_vertex_complex,
    "shaded": shaded_complex,
    "dunce-hat": dunce_hat,
    "cone-K5": lambda: cone_over_graph("K5"),
    "cone-K33": lambda: cone_over_graph("K33"),
}
