"""Exact rational Gaussian elimination: RREF, rank, kernel bases.

Matrices are lists of rows of Fractions.  No pivoting heuristics are needed
(arithmetic is exact); pivots are chosen first-nonzero so results are
deterministic, and zero entries are skipped to exploit sparsity.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rref(matrix: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row-echelon form (copy) and the pivot column list."""
    m = [list(row) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        if pv != _ONE:
            inv = _ONE / pv
            m[r] = [v * inv for v in m[r]]
        row_r = m[r]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f:
                row_i = m[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] -= f * row_r[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(matrix: list[Row]) -> int:
    return len(rref(matrix)[1])


def kernel_basis(matrix: list[Row], ncols: int) -> list[Row]:
    """Basis of the right kernel, one vector per non-pivot column, ordered by
    free column index (the reduced-echelon kernel basis)."""
    if not matrix:
        return [[_ONE if i == f else _ZERO for i in range(ncols)] for f in range(ncols)]
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis: list[Row] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [_ZERO] * ncols
        vec[free] = _ONE
        for r, c in enumerate(pivots):
            if reduced[r][free]:
                vec[c] = -reduced[r][free]
        basis.append(vec)
    return basis
