"""Pure-Python intersection LP kernel.

Fraction-free (integer preserving) two-phase simplex with Bland's rule.
The tableau holds integers; the true tableau is ``T / det``.  Python ints
never overflow, so this path accepts any integer input.  The compiled
kernel in ``_lpkernel.pyx`` runs the same algorithm on machine integers.
"""


def intersect_lp(P, Q, objective):
    """Maximize ``objective . (lam, mu)`` subject to
    ``sum lam_i P_i = sum mu_j Q_j``, ``sum lam = sum mu = 1``, ``lam, mu >= 0``.

    ``P``/``Q`` are lists of integer coordinate rows (already scaled so the
    equations are integral), ``objective`` a 0/1 list of length
    ``len(P) + len(Q)``.  Returns ``None`` if infeasible, else
    ``(value_num, det, x_nums)`` with value ``value_num/det`` and
    ``x_j = x_nums[j]/det``.
    """
    a, b = len(P), len(Q)
    n = a + b
    d = len(P[0]) if a else len(Q[0])
    rows = []
    for c in range(d):
        rows.append([P[i][c] for i in range(a)] + [-Q[j][c] for j in range(b)] + [0])
    rows.append([1] * a + [0] * b + [1])
    rows.append([0] * a + [1] * b + [1])
    return _two_phase(rows, n, objective)


def _two_phase(rows, n, objective):
    m = len(rows)
    width = n + m + 1  # variables, artificials, rhs
    T = []
    for i, r in enumerate(rows):
        art = [0] * m
        art[i] = 1
        row = r[:n] + art + [r[n]]
        if row[-1] < 0:
            row = [-x for x in row[:n]] + art + [-row[-1]]
        T.append(row)
    basis = [n + i for i in range(m)]
    # phase 1: maximize -sum(artificials)
    z = [0] * width
    for i in range(m):
        for j in range(n):
            z[j] -= T[i][j]
        z[-1] -= T[i][-1]
    T.append(z)
    det = 1
    det = _simplex(T, basis, det, n + m)
    if T[-1][-1] != 0:
        return None
    # drive zero-level artificials out of the basis, drop redundant rows
    i = 0
    while i < len(basis):
        if basis[i] < n:
            i += 1
            continue
        col = next((j for j in range(n) if T[i][j] != 0), None)
        if col is None:
            del T[i]
            del basis[i]
            continue
        if T[i][col] < 0:
            T[i] = [-x for x in T[i]]
        det = _pivot(T, i, col, det)
        basis[i] = col
        i += 1
    # phase 2 objective row: real row = -c + sum c_B * R_i
    z = [-objective[j] * det for j in range(n)] + [0] * m + [0]
    for i, bv in enumerate(basis):
        if objective[bv]:
            for j in range(width):
                z[j] += T[i][j]
    T[-1] = z
    # artificials may not re-enter
    det = _simplex(T, basis, det, n)
    x = [0] * n
    for i, bv in enumerate(basis):
        x[bv] = T[i][-1]
    return T[-1][-1], det, x


def _pivot(T, r, c, det):
    pr = T[r]
    p = pr[c]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            if p != det:
                # row * p / det, exact
                T[i] = [x * p // det for x in row]
            continue
        T[i] = [(x * p - f * y) // det for x, y in zip(row, pr)]
    return p


def _simplex(T, basis, det, ncols):
    """Bland's rule on the last row; columns >= ncols never enter."""
    m = len(basis)
    z = T[-1]
    while True:
        z = T[-1]
        c = next((j for j in range(ncols) if z[j] < 0), None)
        if c is None:
            return det
        best = None
        for i in range(m):
            a = T[i][c]
            if a > 0:
                rhs = T[i][-1]
                if best is None:
                    best = i
                else:
                    # rhs_i / a_i < rhs_b / a_b, ties by basis index
                    lhs = rhs * T[best][c]
                    rhs_b = T[best][-1] * a
                    if lhs < rhs_b or (lhs == rhs_b and basis[i] < basis[best]):
                        best = i
        if best is None:
            raise ArithmeticError("unbounded LP")
        det = _pivot(T, best, c, det)
        basis[best] = c
