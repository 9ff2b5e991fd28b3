"""Width of nonnegative integer matrices and the standard-monomial basis.

A weak diagonal of a matrix is a chain of distinct positions, weakly
increasing in both coordinates, through nonzero entries; the width is the
maximal entry sum over such chains.  Monomials whose exponent matrix has
width at most 2 are exactly the standard monomials of the quotient by the
cubic-generator ideal, so enumerating them computes the quotient's dimension
and Hilbert function.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import narayana
from .poly import Exponents, flatten


@dataclass(frozen=True)
class WidthReport:
    width: int
    witness_chain: tuple[tuple[int, int], ...]  # 0-based positions, nonzero entries only


def width(matrix: Exponents) -> WidthReport:
    """Maximal entry sum over weak diagonals, with a witness chain.

    Dynamic programming over prefix maxima: best[i][j] is the largest chain
    sum ending at (i, j), and pref[i][j] the largest over the rectangle up to
    (i, j); O(rows * cols) total.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if rows == 0 or cols == 0:
        return WidthReport(0, ())
    best = [[0] * cols for _ in range(rows)]
    pref = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            up = pref[i - 1][j] if i else 0
            left = pref[i][j - 1] if j else 0
            best[i][j] = matrix[i][j] + max(up, left)
            pref[i][j] = max(best[i][j], up, left)
    top = max(max(row) for row in best)
    # backtrack one optimal chain, preferring small row then small column
    chain: list[tuple[int, int]] = []
    target = top
    pos = None
    for i in range(rows):
        for j in range(cols):
            if best[i][j] == top:
                pos = (i, j)
                break
        if pos:
            break
    while pos is not None and target > 0:
        i, j = pos
        if matrix[i][j]:
            chain.append((i, j))
        target -= matrix[i][j]
        if target == 0:
            break
        pos = None
        for pi in range(i + 1):
            for pj in range(j + 1):
                if (pi, pj) != (i, j) and pi <= i and pj <= j and best[pi][pj] == target:
                    pos = (pi, pj)
                    break
            if pos:
                break
    chain.reverse()
    return WidthReport(top, tuple(chain))


def has_weak_column_triple(matrix: Exponents) -> bool:
    """Whether the monomial's sorted variable word (row-major, with
    multiplicity) contains a weakly increasing column triple.  Equivalent to
    width(matrix) > 2 for nonnegative matrices."""
    cols: list[int] = []
    for row in matrix:
        for j, e in enumerate(row):
            cols.extend([j] * e)
    # longest weakly increasing subsequence of length >= 3?
    # tails[t] = smallest possible last value of a weakly increasing
    # subsequence of length t+1
    tails: list[int] = []
    for c in cols:
        placed = False
        for t in range(len(tails)):
            if tails[t] > c:
                tails[t] = c
                placed = True
                break
        if not placed:
            tails.append(c)
            if len(tails) >= 3:
                return True
    return False


def is_standard(matrix: Exponents) -> bool:
    """True iff width(matrix) <= 2, i.e. the monomial survives in the quotient."""
    return width(matrix).width <= 2


def enumerate_standard(m: int, k: int) -> list[Exponents]:
    """All k x (m-k) matrices of width <= 2, ordered by (degree, row-major lex).

    Backtracks over entries in row-major order, maintaining the width DP rows
    incrementally; a partial fill is pruned as soon as some chain through the
    filled region exceeds 2.  Entries above 2 never occur in a width-<=2
    matrix, so the search alphabet is {0, 1, 2}.
    """
    if not (1 <= k <= m):
        raise ValueError(f"require 1 <= k <= m, got m={m}, k={k}")
    n = m - k
    if n == 0:
        return [tuple(() for _ in range(k))]
    results: list[Exponents] = []
    entries = [[0] * n for _ in range(k)]
    best = [[0] * n for _ in range(k)]
    pref = [[0] * n for _ in range(k)]

    def fill(pos: int) -> None:
        if pos == k * n:
            results.append(tuple(tuple(row) for row in entries))
            return
        i, j = divmod(pos, n)
        up = pref[i - 1][j] if i else 0
        left = pref[i][j - 1] if j else 0
        base = max(up, left)
        for v in range(0, 3):
            if v + base > 2:
                break
            entries[i][j] = v
            best[i][j] = v + base
            pref[i][j] = max(best[i][j], base)
            fill(pos + 1)
        entries[i][j] = 0

    fill(0)
    results.sort(key=lambda mat: (sum(flatten(mat)), flatten(mat)))
    return results


def hilbert_function(m: int, k: int) -> list[int]:
    """Standard-monomial counts per degree, indexed from degree 0."""
    counts: dict[int, int] = {}
    for mat in enumerate_standard(m, k):
        d = sum(flatten(mat))
        counts[d] = counts.get(d, 0) + 1
    top = max(counts) if counts else 0
    return [counts.get(d, 0) for d in range(top + 1)]


def standard_count(m: int, k: int) -> int:
    """Dimension of the quotient ring; equals narayana(m+1, k+1)."""
    return len(enumerate_standard(m, k))


def dimension_formula(m: int, k: int) -> int:
    """Closed form for the quotient dimension, N(m+1, k+1)."""
    if not (1 <= k <= m):
        raise ValueError(f"require 1 <= k <= m, got m={m}, k={k}")
    return int(narayana(m + 1, k + 1))
