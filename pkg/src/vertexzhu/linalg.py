"""Dense exact linear algebra over Q or Q(k).

Entries may be ``fractions.Fraction`` or ``Scalar``; both support field
arithmetic and are falsy exactly when zero.  Pivoting is deterministic:
leftmost nonzero column, first available row.
"""
from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def frac_rank(rows):
    return rank([[Fraction(x) for x in r] for r in rows])


def kernel_basis(rows, ncols=None, one=None):
    """Basis of the right kernel, echelonized, deterministic order."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if one is None:
        one = Fraction(1)
    zero = one - one
    if not rows:
        basis = []
        for c in range(ncols):
            v = [zero] * ncols
            v[c] = one
            basis.append(v)
        return basis
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def in_span(rows, vec):
    """Whether vec lies in the row span of rows."""
    return rank(list(rows) + [list(vec)]) == rank(rows)


def solve_linear(rows, target, one=None):
    """Coefficients c with sum_i c_i rows[i] = target, or None.

    Deterministic: returns the solution with free coordinates zero.
    """
    if one is None:
        one = Fraction(1)
    zero = one - one
    n = len(rows)
    if n == 0:
        return [] if not any(target) else None
    ncols = len(rows[0])
    # solve A^T c = target by eliminating the augmented transpose
    aug = []
    for c in range(ncols):
        aug.append([rows[i][c] for i in range(n)] + [target[c]])
    red, pivots = rref(aug)
    if n in pivots:
        return None
    sol = [zero] * n
    for r, pc in enumerate(pivots):
        sol[pc] = red[r][n]
    return sol
