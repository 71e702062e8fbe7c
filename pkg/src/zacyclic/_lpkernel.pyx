# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled intersection LP kernel.

Same algorithm as ``_lp.py`` (fraction-free two-phase simplex, Bland's
rule) on 64-bit integers with 128-bit intermediate products.  An entry
leaving the 64-bit range raises ``OverflowError``; the caller then falls
back to the pure-Python kernel.
"""

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef enum:
    MAXR = 16
    MAXC = 48

cdef long long LIM = 0x3FFFFFFFFFFFFFFF


cdef int pivot(long long* T, int nrows, int width, int r, int c, long long det) except -1:
    cdef long long p = T[r * MAXC + c]
    cdef long long f
    cdef i128 v
    cdef int i, j
    for i in range(nrows):
        if i == r:
            continue
        f = T[i * MAXC + c]
        for j in range(width):
            v = (<i128>T[i * MAXC + j] * p - <i128>f * T[r * MAXC + j]) / det
            if v > LIM or v < -LIM:
                raise OverflowError("tableau entry exceeds 64 bits")
            T[i * MAXC + j] = <long long>v
    return 0


cdef long long simplex(long long* T, int m, int width, int* basis, long long det,
                       int ncols) except? -1:
    cdef int c, i, best, j
    cdef long long a
    cdef i128 lhs, rhsb
    cdef int rhs = width - 1
    while True:
        c = -1
        for j in range(ncols):
            if T[m * MAXC + j] < 0:
                c = j
                break
        if c < 0:
            return det
        best = -1
        for i in range(m):
            a = T[i * MAXC + c]
            if a > 0:
                if best < 0:
                    best = i
                else:
                    lhs = <i128>T[i * MAXC + rhs] * T[best * MAXC + c]
                    rhsb = <i128>T[best * MAXC + rhs] * a
                    if lhs < rhsb or (lhs == rhsb and basis[i] < basis[best]):
                        best = i
        if best < 0:
            raise ArithmeticError("unbounded LP")
        pivot(T, m + 1, width, best, c, det)
        det = T[best * MAXC + c]
        basis[best] = c


def intersect_lp(P, Q, objective):
    """See ``_lp.intersect_lp``."""
    cdef int a = len(P), b = len(Q)
    cdef int n = a + b
    cdef int d = len(P[0]) if a else len(Q[0])
    cdef int m = d + 2
    cdef int width = n + m + 1
    cdef int rhs = width - 1
    cdef int i, j, c, col, alive
    cdef long long T[MAXR * MAXC]
    cdef int basis[MAXR]
    cdef int obj[MAXC]
    cdef long long det = 1
    cdef long long v
    if m + 1 > MAXR or width > MAXC:
        raise OverflowError("problem too large for the compiled kernel")
    for i in range(MAXR * MAXC):
        T[i] = 0
    for c in range(d):
        for i in range(a):
            T[c * MAXC + i] = P[i][c]
        for j in range(b):
            T[c * MAXC + a + j] = -Q[j][c]
    for i in range(a):
        T[d * MAXC + i] = 1
    T[d * MAXC + rhs] = 1
    for j in range(b):
        T[(d + 1) * MAXC + a + j] = 1
    T[(d + 1) * MAXC + rhs] = 1
    for i in range(m):
        T[i * MAXC + n + i] = 1
        basis[i] = n + i
    for j in range(n):
        obj[j] = 1 if objective[j] else 0
    # phase 1: maximize -sum(artificials)
    for j in range(width):
        if j < n or j == rhs:
            v = 0
            for i in range(m):
                v -= T[i * MAXC + j]
            T[m * MAXC + j] = v
    det = simplex(T, m, width, basis, det, n + m)
    if T[m * MAXC + rhs] != 0:
        return None
    # drive artificials out; rows without a usable column are redundant
    alive = m
    i = 0
    while i < alive:
        if basis[i] < n:
            i += 1
            continue
        col = -1
        for j in range(n):
            if T[i * MAXC + j] != 0:
                col = j
                break
        if col < 0:
            for c in range(i, alive):
                for j in range(width):
                    T[c * MAXC + j] = T[(c + 1) * MAXC + j]
                if c + 1 < alive:
                    basis[c] = basis[c + 1]
            alive -= 1
            continue
        if T[i * MAXC + col] < 0:
            for j in range(width):
                T[i * MAXC + j] = -T[i * MAXC + j]
        pivot(T, alive + 1, width, i, col, det)
        det = T[i * MAXC + col]
        basis[i] = col
        i += 1
    m = alive
    # phase 2 objective row
    for j in range(width):
        T[m * MAXC + j] = 0
    for j in range(n):
        T[m * MAXC + j] = -obj[j] * det
    for i in range(m):
        if basis[i] < n and obj[basis[i]]:
            for j in range(width):
                T[m * MAXC + j] += T[i * MAXC + j]
    det = simplex(T, m, width, basis, det, n)
    x = [0] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i * MAXC + rhs]
    return T[m * MAXC + rhs], det, x
