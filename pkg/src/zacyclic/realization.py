"""Symmetric integer realizations of the shaded complex in R^3 and of the
full complex in R^4.

Search layout: the tetrahedral rotation group T (order 12) acts on the
shaded complex with vertex orbits of sizes 4, 6 and 12.  An orbit
representative whose stabilizer is non-trivial must sit on the fixed
line of that stabilizer:

* the 4-orbit {B, C, D, E}: stabilizer of order 3, points t(1,1,1) etc.;
* the 6-orbit (middle strip vertices): stabilizer of order 2, points on a
  coordinate axis;
* the 12-orbit: free, any lattice point of the box.

So with box [-b, b]^3 there are only (2b)^2 (2b+1)^3 leaves instead of
(2b+1)^66, and each node is checked incrementally against the faces
already placed, one representative per face orbit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .complex import ComplexError, SimplicialComplex, verify_simplicial_action
from .geometry import Coordinates, GeometryError, verify_embedding

log = logging.getLogger(__name__)

TETRA_LABELS = ("B", "C", "D", "E")
TETRA_POINTS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def _matvec(M, p):
    return tuple(sum(M[r][c] * p[c] for c in range(len(p))) for r in range(len(M)))


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[r][k] * B[k][c] for k in range(n)) for c in range(n)) for r in range(n))


def _det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def tetrahedral_rotation_group(dim: int = 3) -> list[tuple[tuple[int, ...], ...]]:
    """The 12 rotations: cyclic permutations of the axes times sign changes
    with an even number of minus signs; in dimension 4 the last axis is fixed."""
    if dim not in (3, 4):
        raise ValueError("dim must be 3 or 4")
    out = []
    for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
            M = [[0] * dim for _ in range(dim)]
            for r in range(3):
                M[r][perm[r]] = signs[r]
            if dim == 4:
                M[3][3] = 1
            out.append(tuple(tuple(row) for row in M))
    return out


# -- automorphisms --------------------------------------------------------------


def automorphisms(K: SimplicialComplex, fixed: str | None = None) -> list[dict]:
    """All simplicial automorphisms of ``K`` (fixing ``fixed`` if given), by
    backtracking with degree invariants and adjacency checks."""
    verts = list(K.vertices)
    adj = {v: set(K.neighbors(v)) for v in verts}
    tri_deg = {v: 0 for v in verts}
    for f in K.faces(2):
        for v in f:
            tri_deg[v] += 1
    inv = {v: (len(adj[v]), tri_deg[v], sorted(len(adj[w]) for w in adj[v])) for v in verts}
    # BFS order keeps the partial map connected, which prunes hard
    order, seen = [], set()
    for s in sorted(verts, key=lambda v: (-len(adj[v]), v)):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    facets = set(K.facets)
    results = []
    phi: dict[str, str] = {}
    used: set[str] = set()

    def extend(k):
        if k == len(order):
            if all(tuple(sorted(phi[v] for v in f)) in facets for f in facets):
                results.append(dict(phi))
            return
        v = order[k]
        cands = [fixed] if fixed is not None and v == fixed else verts
        for w in cands:
            if w in used or inv[w] != inv[v]:
                continue
            if fixed is not None and (w == fixed) != (v == fixed):
                continue
            ok = True
            for u, img in phi.items():
                if (u in adj[v]) != (img in adj[w]):
                    ok = False
                    break
            if not ok:
                continue
            phi[v] = w
            used.add(w)
            extend(k + 1)
            del phi[v]
            used.discard(w)

    extend(0)
    return results


@dataclass
class SymmetryAction:
    """Vertex permutations paired with rotation matrices."""

    perms: list[dict]
    matrices: list[tuple]
    orbits: list[list[str]] = field(default_factory=list)

    def __len__(self):
        return len(self.perms)

    @property
    def orbit_sizes(self) -> list[int]:
        return sorted(len(o) for o in self.orbits)


def _even(perm_tuple) -> bool:
    p, sign = list(perm_tuple), 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign > 0


def match_action(K: SimplicialComplex, fixed: str | None = None, dim: int = 3,
                 tetra: tuple[str, ...] = TETRA_LABELS) -> SymmetryAction:
    """Order-12 group of automorphisms acting on ``tetra`` as A4, each paired
    with the tetrahedral rotation that moves the tetrahedron the same way."""
    if not set(tetra) <= set(K.vertices):
        raise ComplexError(f"complex lacks the vertices {tetra}")
    auts = automorphisms(K, fixed)
    idx = {v: i for i, v in enumerate(tetra)}
    chosen = {}
    for g in auts:
        if {g[v] for v in tetra} != set(tetra):
            continue
        restr = tuple(idx[g[v]] for v in tetra)
        if _even(restr) and restr not in chosen:
            chosen[restr] = g
    if len(chosen) != 12:
        raise ComplexError(
            f"no tetrahedral action: automorphism group has order {len(auts)}, "
            f"{len(chosen)} even permutations of {tetra} realized"
        )
    group3 = tetrahedral_rotation_group(3)
    groupd = tetrahedral_rotation_group(dim)
    perms, mats = [], []
    for restr in sorted(chosen):
        g = chosen[restr]
        for M3, Md in zip(group3, groupd):
            if all(_matvec(M3, TETRA_POINTS[i]) == TETRA_POINTS[restr[i]] for i in range(4)):
                perms.append(g)
                mats.append(Md)
                break
    # the chosen automorphisms must be a group mapped homomorphically
    if not verify_simplicial_action(K, perms):
        raise ComplexError("selected automorphisms do not form a group")
    key = {tuple(sorted(g.items())): M for g, M in zip(perms, mats)}
    for g, A in zip(perms, mats):
        for h, B in zip(perms, mats):
            gh = {v: g[h[v]] for v in K.vertices}
            if key.get(tuple(sorted(gh.items()))) != _matmul(A, B):
                raise ComplexError("vertex action and rotations are not compatible")
    orbits, seen = [], set()
    for v in K.vertices:
        if v in seen:
            continue
        orb = sorted({g[v] for g in perms})
        seen.update(orb)
        orbits.append(orb)
    return SymmetryAction(perms, mats, orbits)


# -- coordinate search ----------------------------------------------------------


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    exhausted: bool = False
    budget_hit: bool = False


def _candidates(stab_mats, all_mats, orbit_size, box):
    """Lattice points of the box fixed by ``stab_mats`` whose orbit has the
    right size, smallest first."""
    rng = range(-box, box + 1)
    pts = []
    for p in product(rng, repeat=3):
        if any(_matvec(M, p) != p for M in stab_mats):
            continue
        if len({_matvec(M, p) for M in all_mats}) != orbit_size:
            continue
        pts.append(p)
    pts.sort(key=lambda p: (max(map(abs, p)), sum(map(abs, p)), tuple(-x for x in p)))
    return pts


def _face_orbit_reps(faces, action):
    reps, seen = [], set()
    for s in faces:
        if s in seen:
            continue
        reps.append(s)
        for g in action.perms:
            seen.add(tuple(sorted(g[v] for v in s)))
    return reps


def search_coordinates(K: SimplicialComplex, action: SymmetryAction, box: int = 4,
                       budget: int = 10**6, order: list | None = None, backend=None):
    """Equivariant integer embedding of ``K`` in [-box, box]^3, or None.

    Returns ``(coords, stats)``.  Orbits are placed in the order 4, 6, 12
    (``order`` overrides); every node is checked against the faces already
    placed and the final assignment is re-verified over all face pairs.
    """
    stats = SearchStats()
    if box < 1:
        stats.exhausted = True
        return None, stats
    mats = [tuple(tuple(r[:3]) for r in M[:3]) for M in action.matrices]
    orbits = order or sorted(action.orbits, key=lambda o: (not set(TETRA_LABELS) & set(o), len(o), o))
    plan = []
    for orb in orbits:
        rep = orb[0]
        stab = [M for g, M in zip(action.perms, mats) if g[rep] == rep]
        cands = _candidates(stab, mats, len(orb), box)
        # image of rep under each group element: orbit vertex -> matrix carrying rep there
        carry = {}
        for g, M in zip(action.perms, mats):
            carry.setdefault(g[rep], M)
        plan.append((orb, rep, carry, cands))
        log.debug("orbit %s: %d candidates", orb, len(cands))

    all_faces = K.faces()
    placed: dict[str, tuple] = {}

    def new_faces(orb):
        have = set(placed)
        s_orb = set(orb)
        return [s for s in all_faces if set(s) <= have and s_orb & set(s)]

    def check(orb):
        cur = [s for s in all_faces if set(s) <= set(placed)]
        sub = SimplicialComplex(cur)
        coords = Coordinates(3, {v: placed[v] for v in sub.vertices})
        fresh = _face_orbit_reps(new_faces(orb), action)
        return verify_embedding(sub, coords, faces=fresh, against=cur, backend=backend).ok

    def rec(k):
        if k == len(plan):
            stats.leaves += 1
            return True
        orb, rep, carry, cands = plan[k]
        for p in cands:
            if stats.nodes >= budget:
                stats.budget_hit = True
                return False
            stats.nodes += 1
            pts = {v: _matvec(carry[v], p) for v in orb}
            if set(pts.values()) & set(placed.values()):
                continue
            placed.update(pts)
            if check(orb) and rec(k + 1):
                return True
            for v in orb:
                del placed[v]
        return False

    found = rec(0)
    if not found:
        stats.exhausted = not stats.budget_hit
        return None, stats
    coords = Coordinates(3, dict(placed))
    cert = verify_embedding(K, coords, backend=backend)
    if not cert.ok:
        raise GeometryError(f"search produced an invalid embedding: {cert.violation}")
    return coords, stats


def check_equivariance(coords: Coordinates, action: SymmetryAction) -> bool:
    for g, M in zip(action.perms, action.matrices):
        for v, p in coords.assignment.items():
            if v in g and _matvec(M, p) != coords[g[v]]:
                return False
    return True


def cone_realization(K_full: SimplicialComplex, coords3d: Coordinates, apex: str = "A",
                     apex_point=(0, 0, 0, 1), backend=None):
    """Lift a 3D model into x4 = 0 and put the apex at ``apex_point``.

    Returns ``(coords4d, certificate)``; raises if the full complex fails
    verification.
    """
    if coords3d.dim != 3:
        raise GeometryError("expected a 3-dimensional model")
    pts = {v: tuple(p) + (Fraction(0),) for v, p in coords3d.assignment.items()}
    pts[apex] = tuple(Fraction(c) for c in apex_point)
    coords = Coordinates(4, pts)
    cert = verify_embedding(K_full, coords, backend=backend)
    if not cert.ok:
        raise GeometryError(f"coned model is not an embedding: {cert.violation}")
    return coords, cert


# -- export ---------------------------------------------------------------------


def _num(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def export_off(K: SimplicialComplex, coords: Coordinates) -> str:
    if coords.dim != 3:
        raise GeometryError("OFF export needs 3-dimensional coordinates")
    verts = K.vertices
    idx = {v: i for i, v in enumerate(verts)}
    tris = K.faces(2)
    lines = ["OFF", f"{len(verts)} {len(tris)} {len(K.faces(1))}"]
    for v in verts:
        p = coords[v]
        # OFF readers expect decimals; integer models are exact anyway
        lines.append(" ".join(_num(c) if c.denominator == 1 else repr(float(c)) for c in p))
    for t in tris:
        lines.append("3 " + " ".join(str(idx[v]) for v in t))
    return "\n".join(lines) + "\n"


def export_model(K: SimplicialComplex, coords: Coordinates, fmt: str = "structured-text") -> str:
    from .io import format_coordinates

    if fmt.upper() == "OFF":
        return export_off(K, coords)
    if fmt == "structured-text":
        return format_coordinates(coords, order=K.vertices)
    raise ValueError(f"unknown format {fmt!r}")
