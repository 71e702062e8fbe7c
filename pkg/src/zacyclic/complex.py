"""Finite abstract simplicial complexes.

A complex is stored by its facets.  Vertex labels are non-empty tokens
without whitespace; simplices are tuples of labels sorted by the plain
string order, so equal simplices always compare equal and boundary signs
downstream are fixed by that order.
"""

from __future__ import annotations

import random
from collections import Counter
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


class ComplexError(ValueError):
    """Malformed input or an operation not defined on the given complex."""


Simplex = tuple  # sorted tuple of labels


def _check_label(v) -> str:
    if not isinstance(v, str) or not v or any(c.isspace() for c in v) or not v.isprintable():
        raise ComplexError(f"bad vertex label {v!r}")
    return v


def simplex(vertices: Iterable[str]) -> Simplex:
    vs = [_check_label(v) for v in vertices]
    if not vs:
        raise ComplexError("empty simplex")
    if len(set(vs)) != len(vs):
        raise ComplexError(f"repeated label in simplex {vs}")
    return tuple(sorted(vs))


def _faces_of(s: Simplex):
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


class SimplicialComplex:
    """Immutable simplicial complex given by its facets."""

    def __init__(self, facets: Iterable[Sequence[str]] = ()):
        cleaned = {simplex(f) for f in facets}
        # drop dominated facets, largest first
        keep: list[Simplex] = []
        covered: set[Simplex] = set()
        for f in sorted(cleaned, key=lambda s: (-len(s), s)):
            if f in covered:
                continue
            keep.append(f)
            covered.update(_faces_of(f))
        self.facets: tuple[Simplex, ...] = tuple(sorted(keep, key=lambda s: (len(s), s)))

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector})"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __contains__(self, s):
        return tuple(sorted(s)) in self.face_set

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @cached_property
    def face_set(self) -> frozenset:
        out = set()
        for f in self.facets:
            out.update(_faces_of(f))
        return frozenset(out)

    @cached_property
    def _faces_by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        if not self.facets:
            return ()
        top = max(len(f) for f in self.facets)
        buckets: list[list] = [[] for _ in range(top)]
        for s in self.face_set:
            buckets[len(s) - 1].append(s)
        return tuple(tuple(sorted(b)) for b in buckets)

    def faces(self, k: int | None = None) -> tuple[Simplex, ...]:
        """Faces of dimension ``k`` in lexicographic order (all faces if ``k`` is None)."""
        if k is None:
            return tuple(s for b in self._faces_by_dim for s in b)
        if k < 0 or k >= len(self._faces_by_dim):
            return ()
        return self._faces_by_dim[k]

    @property
    def dim(self) -> int:
        return len(self._faces_by_dim) - 1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self._faces_by_dim)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def edges(self) -> tuple[Simplex, ...]:
        return self.faces(1)

    def neighbors(self, v: str) -> list[str]:
        return sorted({w for e in self.faces(1) if v in e for w in e if w != v})

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(s for s in self.face_set if len(s) <= k + 1)

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1


def make_complex(facets: Iterable[Sequence[str]]) -> SimplicialComplex:
    return SimplicialComplex(facets)


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return K.f_vector


def connected_components(K: SimplicialComplex) -> list[set[str]]:
    parent = {v: v for v in K.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in K.faces(1):
        parent[find(a)] = find(b)
    comps: dict[str, set] = {}
    for v in K.vertices:
        comps.setdefault(find(v), set()).add(v)
    return sorted(comps.values(), key=min)


def _require_vertex(K, v):
    if v not in K.vertices:
        raise ComplexError(f"unknown vertex {v!r}")


def star(K: SimplicialComplex, v: str) -> SimplicialComplex:
    _require_vertex(K, v)
    return SimplicialComplex(f for f in K.facets if v in f)


def link(K: SimplicialComplex, v: str) -> SimplicialComplex:
    _require_vertex(K, v)
    return SimplicialComplex(
        tuple(w for w in f if w != v) for f in K.facets if v in f and len(f) > 1
    )


def remove_star(K: SimplicialComplex, v: str) -> SimplicialComplex:
    """All simplices of ``K`` not containing ``v``."""
    _require_vertex(K, v)
    return SimplicialComplex(s for s in K.face_set if v not in s)


def relabel(K: SimplicialComplex, mapping: dict) -> SimplicialComplex:
    return SimplicialComplex(tuple(mapping.get(v, v) for v in f) for f in K.facets)


def cone(K: SimplicialComplex, apex: str) -> SimplicialComplex:
    _check_label(apex)
    if apex in K.vertices:
        raise ComplexError(f"apex label {apex!r} already used")
    if not K.facets:
        return SimplicialComplex([[apex]])
    return SimplicialComplex(f + (apex,) for f in K.facets)


def _fresh_labels(K1, K2, keep=()):
    """Suffix labels of K2 that clash with K1 (except those in ``keep``)."""
    used = set(K1.vertices) | set(K2.vertices)
    mapping = {}
    for v in K2.vertices:
        if v in keep or v not in K1.vertices:
            continue
        n = 1
        while f"{v}'{n}" in used:
            n += 1
        mapping[v] = f"{v}'{n}"
        used.add(mapping[v])
    return mapping


def wedge(K1: SimplicialComplex, K2: SimplicialComplex, v1: str, v2: str) -> SimplicialComplex:
    """One-point union identifying ``v2`` of ``K2`` with ``v1`` of ``K1``.

    Clashing labels of ``K2`` get a ``'n`` suffix before the identification.
    """
    _require_vertex(K1, v1)
    _require_vertex(K2, v2)
    mapping = _fresh_labels(K1, K2)
    mapping[v2] = v1
    K2r = relabel(K2, mapping)
    if set(K1.vertices) & set(K2r.vertices) != {v1}:
        raise ComplexError("label clash not resolved by relabeling")
    return SimplicialComplex(K1.facets + K2r.facets)


def connected_sum(
    K1: SimplicialComplex,
    t1: Sequence[str],
    K2: SimplicialComplex,
    t2: Sequence[str],
    matching: Sequence[int] = (0, 1, 2),
) -> SimplicialComplex:
    """Glue ``K2`` to ``K1`` after deleting the open triangle ``t1``.

    The boundary of ``t1`` is identified with the boundary of ``t2`` by
    ``t1[i] -> t2[matching[i]]`` (both in sorted order); ``t2`` keeps its
    interior, so the Euler characteristic is ``chi1 + chi2 - 1``.
    """
    t1, t2 = simplex(t1), simplex(t2)
    for K, t in ((K1, t1), (K2, t2)):
        if len(t) != 3 or t not in K.face_set:
            raise ComplexError(f"{t} is not a 2-face")
        if K.dim != 2:
            raise ComplexError("connected sum needs 2-dimensional complexes")
    if sorted(matching) != [0, 1, 2]:
        raise ComplexError("matching must be a permutation of 0,1,2")
    mapping = _fresh_labels(K1, K2, keep=())
    inv = {t2[matching[i]]: t1[i] for i in range(3)}
    mapping.update(inv)
    K2r = relabel(K2, mapping)
    shared = set(K1.vertices) & set(K2r.vertices)
    if shared != set(t1):
        raise ComplexError("label clash not resolved by relabeling")
    faces = [s for s in K1.face_set if s != t1] + list(K2r.facets)
    for s in faces:
        if len(set(s)) != len(s):
            raise ComplexError("gluing creates a degenerate simplex")
    return SimplicialComplex(faces)


def is_tree(K: SimplicialComplex) -> bool:
    if K.dim > 1:
        raise ComplexError("is_tree needs a complex of dimension <= 1")
    f = K.f_vector + (0, 0)
    return f[0] > 0 and K.is_connected() and f[1] == f[0] - 1


# -- collapses ---------------------------------------------------------------


def free_faces(faces: set) -> list[tuple[Simplex, Simplex]]:
    """Pairs (free face, its unique coface) in a set of simplices closed under faces."""
    cofaces: dict[Simplex, list] = {}
    for s in faces:
        if len(s) < 2:
            continue
        for i in range(len(s)):
            cofaces.setdefault(s[:i] + s[i + 1:], []).append(s)
    out = []
    for s, cs in cofaces.items():
        if len(cs) != 1:
            continue
        (c,) = cs
        # c must be maximal
        out.append((s, c))
    maximal = _maximal(faces)
    return sorted(((s, c) for s, c in out if c in maximal), key=lambda p: (p[1], p[0]))


def _maximal(faces: set) -> set:
    nonmax = set()
    for s in faces:
        for i in range(len(s)):
            if len(s) > 1:
                nonmax.add(s[:i] + s[i + 1:])
    return faces - nonmax


def greedy_collapse(K: SimplicialComplex, strategy: str = "lexicographic", apex: str | None = None,
                    seed: int = 0):
    """Repeatedly remove a free face together with its unique coface.

    ``strategy`` is ``lexicographic``, ``apex-first`` (prefer free faces
    avoiding ``apex``, so everything is pushed into the apex) or
    ``randomized``.  Returns ``(complex, collapsed_to_point, log)``.
    """
    if strategy not in ("lexicographic", "apex-first", "randomized"):
        raise ComplexError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    faces = set(K.face_set)
    log = []
    while True:
        pairs = free_faces(faces)
        if not pairs:
            break
        if strategy == "lexicographic":
            s, c = pairs[0]
        elif strategy == "apex-first":
            away = [p for p in pairs if apex not in p[0]]
            s, c = (away or pairs)[0]
        else:
            s, c = rng.choice(pairs)
        faces.discard(s)
        faces.discard(c)
        log.append((s, c))
    result = SimplicialComplex(faces) if faces else SimplicialComplex()
    return result, result.f_vector == (1,), log


def verify_simplicial_action(K: SimplicialComplex, perms: Sequence[dict]) -> bool:
    """True iff every map permutes the facets and the set is closed under composition."""
    vs = set(K.vertices)
    facets = set(K.facets)
    canon = []
    for p in perms:
        if set(p) != vs or set(p.values()) != vs:
            raise ComplexError("permutation is not a bijection on the vertex set")
        canon.append(tuple(p[v] for v in K.vertices))
    for p in perms:
        for f in facets:
            if tuple(sorted(p[v] for v in f)) not in facets:
                return False
    group = set(canon)
    idx = {v: i for i, v in enumerate(K.vertices)}
    for a in canon:
        for b in canon:
            # (a o b)(v) = a[b(v)]
            ab = tuple(a[idx[b[i]]] for i in range(len(b)))
            if ab not in group:
                return False
    return True


def degree_counts(K: SimplicialComplex, k: int) -> Counter:
    """For each k-face, the number of (k+1)-faces containing it."""
    c = Counter({s: 0 for s in K.faces(k)})
    for t in K.faces(k + 1):
        for i in range(len(t)):
            c[t[:i] + t[i + 1:]] += 1
    return c
