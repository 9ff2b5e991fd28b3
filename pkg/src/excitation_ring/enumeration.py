"""Closed-form counts and brute-force enumerators for the bijection chain.

Narayana and Catalan numbers, the box-counting product formula for bounded
plane partitions, and exhaustive generators for plane partitions and Dyck
words.  The closed forms and the enumerators are independent routes to the
same counts, so each serves as an oracle for the other in tests.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BudgetExceeded

DYCK_HALF_LENGTH_BUDGET = 14
PP_STATE_BITS_BUDGET = 30.0


def narayana(n: int, r: int) -> int:
    """N(n, r) = C(n,r) * C(n,r-1) / n.

    Out-of-range (n, r) returns 0 (there are no Dyck words of length 2n with
    r-1 valleys unless 1 <= r <= n), which keeps triangle sums clean.
    """
    if n < 1 or r < 1 or r > n:
        return 0
    num = math.comb(n, r) * math.comb(n, r - 1)
    quotient, remainder = divmod(num, n)
    assert remainder == 0, f"Narayana division not exact for {(n, r)}"
    return quotient


def catalan(n: int) -> int:
    """C_n = C(2n, n) / (n + 1)."""
    if n < 0:
        raise ValueError("catalan is defined for n >= 0")
    quotient, remainder = divmod(math.comb(2 * n, n), n + 1)
    assert remainder == 0
    return quotient


def macmahon_count(a: int, b: int, c: int) -> int:
    """Number of a x b plane partitions with entries at most c.

    Evaluates the product over i in [1, c] of
    C(a+b+i-1, a+i-1) * C(a+b+i-1, b+i-1) / (C(a+b+i-1, a) * C(b+i-1, b)).
    Individual factors need not be integers; the product is accumulated as an
    exact rational and checked to be integral at the end.
    """
    if a < 0 or b < 0 or c < 0:
        raise ValueError("macmahon_count needs nonnegative arguments")
    total = Fraction(1)
    for i in range(1, c + 1):
        total *= Fraction(
            math.comb(a + b + i - 1, a + i - 1) * math.comb(a + b + i - 1, b + i - 1),
            math.comb(a + b + i - 1, a) * math.comb(b + i - 1, b),
        )
    assert total.denominator == 1, f"box product not integral for {(a, b, c)}"
    return int(total)


def enumerate_pp(a: int, b: int, c: int, max_state_bits: float | None = None):
    """All a x b matrices with entries <= c, weakly decreasing along rows and
    columns, in row-major lexicographic order.

    The guard a*b*log2(c+1) <= max_state_bits (~30) keeps the search space at
    desk scale; raise it deliberately for bigger sweeps.
    """
    if max_state_bits is None:
        max_state_bits = PP_STATE_BITS_BUDGET
    if a < 0 or b < 0 or c < 0:
        raise ValueError("enumerate_pp needs nonnegative arguments")
    if a * b * math.log2(c + 1) > max_state_bits:
        raise BudgetExceeded(
            f"plane-partition state space for {(a, b, c)} exceeds {max_state_bits} bits"
        )
    if a == 0 or b == 0:
        return [tuple(() for _ in range(a))]
    out = []
    entries = [[0] * b for _ in range(a)]

    def fill(pos: int) -> None:
        if pos == a * b:
            out.append(tuple(tuple(row) for row in entries))
            return
        i, j = divmod(pos, b)
        cap = c
        if i:
            cap = min(cap, entries[i - 1][j])
        if j:
            cap = min(cap, entries[i][j - 1])
        for v in range(cap + 1):
            entries[i][j] = v
            fill(pos + 1)
        entries[i][j] = 0

    fill(0)
    return out


def enumerate_dyck(n: int, valleys: int, max_half_length: int | None = None):
    """All ballot words of length 2n over {u, d} with the given number of
    valleys (du-factors), in lexicographic order with d < u."""
    if max_half_length is None:
        max_half_length = DYCK_HALF_LENGTH_BUDGET
    if n < 0 or valleys < 0:
        raise ValueError("enumerate_dyck needs nonnegative arguments")
    if n > max_half_length:
        raise BudgetExceeded(f"Dyck half-length {n} exceeds budget {max_half_length}")
    out: list[str] = []
    word: list[str] = []

    def extend(ups: int, downs: int, count: int) -> None:
        if count > valleys:
            return
        if ups == n and downs == n:
            if count == valleys:
                out.append("".join(word))
            return
        # 'd' first for lexicographic output
        if downs < ups:
            word.append("d")
            extend(ups, downs + 1, count)
            word.pop()
        if ups < n:
            bump = 1 if word and word[-1] == "d" else 0
            word.append("u")
            extend(ups + 1, downs, count + bump)
            word.pop()

    extend(0, 0, 0)
    return out


def dyck_family(n: int, r: int, max_half_length: int | None = None):
    """The family D(n, r): Dyck words of length 2n with exactly r-1 valleys,
    counted by narayana(n, r)."""
    if not (1 <= r <= n):
        return []
    return enumerate_dyck(n, r - 1, max_half_length)
