"""Integer homology through the Smith normal form.

Matrices are plain lists of lists of Python ints, so entries never
overflow.  The complexes in this package are small (at most a few hundred
cells per dimension); dense storage is fine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import SimplicialComplex

Matrix = list  # list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * n
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


@dataclass
class SNFResult:
    """``U * A * V == D`` with ``D`` diagonal, ``diagonal`` its non-zero part."""

    diagonal: list[int]
    U: Matrix
    V: Matrix
    D: Matrix

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_normal_form(A: Matrix, transforms: bool = True) -> SNFResult:
    """Smith normal form of an integer matrix.

    Pivot: the entry of smallest non-zero absolute value in the remaining
    block, ties broken by (row, column).  With ``transforms=False`` the
    unimodular matrices are not accumulated (faster; ``U``/``V`` are None).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(map(int, row)) for row in A]
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = M[src], M[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in M:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder of row/column t into the pivot
                cands = [(abs(M[i][t]), 0, i) for i in range(t + 1, m) if M[i][t]]
                cands += [(abs(M[t][j]), 1, j) for j in range(t + 1, n) if M[t][j]]
                _, kind, k = min(cands)
                if kind == 0:
                    swap_rows(k, t)
                else:
                    swap_cols(k, t)
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diag.append(M[t][t])
        t += 1
    return SNFResult(diag, U, V, M)


def elementary_divisors(A: Matrix) -> list[int]:
    return smith_normal_form(A, transforms=False).diagonal


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = field(default=())

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = [] if self.rank == 0 else ["Z" if self.rank == 1 else f"Z^{self.rank}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def boundary_matrix(K: SimplicialComplex, k: int) -> Matrix:
    """Matrix of the k-th boundary map, rows = (k-1)-faces, cols = k-faces.

    Removing the i-th vertex (sorted order) contributes ``(-1)**i``.
    """
    if k < 1 or k > K.dim:
        raise ValueError(f"boundary dimension {k} out of range 1..{K.dim}")
    rows = {s: i for i, s in enumerate(K.faces(k - 1))}
    cols = K.faces(k)
    D = zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i in range(len(s)):
            D[rows[s[:i] + s[i + 1:]]][j] = -1 if i % 2 else 1
    return D


def chain_complex(K: SimplicialComplex, reduced: bool = False) -> tuple[list[int], list[Matrix]]:
    """Chain group ranks and boundary maps ``d[k]: C_k -> C_{k-1}`` (``d[0]`` augmentation)."""
    ranks = list(K.f_vector)
    maps = [[[1] * ranks[0]] if reduced else zeros(0, ranks[0])]
    maps += [boundary_matrix(K, k) for k in range(1, K.dim + 1)]
    return ranks, maps


def homology_from_chain_complex(ranks: list[int], maps: list[Matrix]) -> list[HomologyGroup]:
    """Homology of ``0 <- C_0 <- C_1 <- ... <- C_top <- 0`` from SNF data."""
    snf = [elementary_divisors(M) if M and M[0] else [] for M in maps]
    out = []
    for k, n in enumerate(ranks):
        rk_out = len(snf[k])
        into = snf[k + 1] if k + 1 < len(snf) else []
        out.append(HomologyGroup(n - rk_out - len(into), tuple(d for d in into if d > 1)))
    return out


def homology(K: SimplicialComplex, k: int) -> HomologyGroup:
    if k < 0 or k > K.dim:
        raise ValueError(f"dimension {k} out of range")
    return homology_from_chain_complex(*chain_complex(K))[k]


def homology_all(K: SimplicialComplex) -> list[HomologyGroup]:
    return homology_from_chain_complex(*chain_complex(K))


def reduced_homology_all(K: SimplicialComplex) -> list[HomologyGroup]:
    if not K.facets:
        return []
    return homology_from_chain_complex(*chain_complex(K, reduced=True))


def is_z_acyclic(K: SimplicialComplex) -> bool:
    return bool(K.facets) and all(h.is_trivial for h in reduced_homology_all(K))


def cellular_homology(P) -> list[HomologyGroup]:
    """Homology of a 2-dimensional polyhedral complex (see constructions)."""
    return homology_from_chain_complex(*P.chain_complex())
