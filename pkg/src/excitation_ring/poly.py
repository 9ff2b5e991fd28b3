"""Exact multivariate polynomial arithmetic over a k x n matrix of variables.

Variables are the entries X[i,j] of a k x n matrix (1-based indices).  The
monomial order is lexicographic with X[i,j] > X[i',j'] iff i < i', or i = i'
and j < j'; equivalently, flattening exponent matrices row-major gives the
significance order.  Coefficients are exact rationals (``fractions.Fraction``),
so division and normal forms are free of rounding.

Monomials are dense exponent matrices: tuples of tuples of nonnegative ints.
Polynomials are immutable and eagerly normalized (terms sorted largest-first,
no zero coefficients), so ``==`` is structural equality.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Exponents = tuple[tuple[int, ...], ...]


class VarIndex(NamedTuple):
    """A variable position X[row, col], both coordinates 1-based."""

    row: int
    col: int


def compare_variables(a: VarIndex | tuple[int, int], b: VarIndex | tuple[int, int]) -> int:
    """Three-way compare under the variable order: X[i,j] > X[i',j'] iff
    i < i', or i = i' and j < j'.  Returns positive if a > b, negative if
    a < b, zero if equal."""
    if a == b:
        return 0
    return 1 if (a[0], a[1]) < (b[0], b[1]) else -1


def flatten(exp: Exponents) -> tuple[int, ...]:
    """Row-major flattening; position order equals decreasing variable order."""
    return tuple(e for row in exp for e in row)


def unflatten(flat: Sequence[int], dims: tuple[int, int]) -> Exponents:
    k, n = dims
    return tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(k))


def compare_monomials_lex(a: Exponents, b: Exponents) -> int:
    """Three-way lex comparison of two exponent matrices of equal dims.

    Works down the variables in decreasing order (row-major positions); the
    first differing exponent decides, larger exponent meaning larger monomial.
    """
    if len(a) != len(b) or any(len(ra) != len(rb) for ra, rb in zip(a, b)):
        raise ValueError(f"exponent matrices have mismatched dims: {a} vs {b}")
    fa, fb = flatten(a), flatten(b)
    if fa == fb:
        return 0
    return 1 if fa > fb else -1


def monomial_degree(exp: Exponents) -> int:
    return sum(e for row in exp for e in row)


def monomial_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def monomial_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(tuple(max(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def monomial_divides(a: Exponents, b: Exponents) -> bool:
    """True iff monomial a divides monomial b (entrywise <=)."""
    return all(x <= y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def monomial_div(a: Exponents, b: Exponents) -> Exponents:
    """Exact quotient a / b; caller guarantees divisibility."""
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def zero_exponents(dims: tuple[int, int]) -> Exponents:
    k, n = dims
    return tuple((0,) * n for _ in range(k))


class Polynomial:
    """An element of Q[X] with dims-aware exact arithmetic.

    ``terms`` is a tuple of (exponent matrix, coefficient) pairs, strictly
    sorted largest monomial first, with no zero coefficients.
    """

    __slots__ = ("dims", "terms")

    def __init__(self, dims: tuple[int, int], terms: Iterable[tuple[Exponents, Fraction]]):
        collected: dict[Exponents, Fraction] = {}
        for exp, coeff in terms:
            if len(exp) != dims[0] or any(len(row) != dims[1] for row in exp):
                raise ValueError(f"term {exp} does not match dims {dims}")
            if any(e < 0 for row in exp for e in row):
                raise ValueError(f"negative exponent in {exp}")
            c = collected.get(exp, _ZERO) + coeff
            if c:
                collected[exp] = c
            elif exp in collected:
                del collected[exp]
        object.__setattr__(self, "dims", dims)
        object.__setattr__(
            self, "terms", tuple(sorted(collected.items(), key=lambda t: flatten(t[0]), reverse=True))
        )

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dims: tuple[int, int]) -> "Polynomial":
        return cls(dims, [])

    @classmethod
    def constant(cls, dims: tuple[int, int], value) -> "Polynomial":
        return cls(dims, [(zero_exponents(dims), Fraction(value))])

    @classmethod
    def variable(cls, dims: tuple[int, int], var: VarIndex | tuple[int, int]) -> "Polynomial":
        k, n = dims
        i, j = var
        if not (1 <= i <= k and 1 <= j <= n):
            raise ValueError(f"variable {var} out of range for dims {dims}")
        exp = [[0] * n for _ in range(k)]
        exp[i - 1][j - 1] = 1
        return cls(dims, [(tuple(map(tuple, exp)), Fraction(1))])

    @classmethod
    def monomial(cls, dims: tuple[int, int], exp: Exponents, coeff=1) -> "Polynomial":
        return cls(dims, [(exp, Fraction(coeff))])

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        return max((monomial_degree(e) for e, _ in self.terms), default=-1)

    def leading_term(self) -> tuple[Fraction, Exponents]:
        """(coefficient, monomial) of the lex-largest term."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        exp, coeff = self.terms[0]
        return coeff, exp

    def coefficient(self, exp: Exponents) -> Fraction:
        for e, c in self.terms:
            if e == exp:
                return c
        return _ZERO

    # -- arithmetic ----------------------------------------------------------

    def _check_dims(self, other: "Polynomial") -> None:
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_dims(other)
        acc = dict(self.terms)
        for exp, coeff in other.terms:
            acc[exp] = acc.get(exp, _ZERO) + coeff
        return Polynomial(self.dims, acc.items())

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_dims(other)
        acc = dict(self.terms)
        for exp, coeff in other.terms:
            acc[exp] = acc.get(exp, _ZERO) - coeff
        return Polynomial(self.dims, acc.items())

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dims, ((e, -c) for e, c in self.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_dims(other)
        acc: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = monomial_mul(ea, eb)
                acc[e] = acc.get(e, _ZERO) + ca * cb
        return Polynomial(self.dims, acc.items())

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.dims)
        return Polynomial(self.dims, ((e, k * c) for e, k in self.terms))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial) and self.dims == other.dims and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.dims, self.terms))

    def __repr__(self) -> str:
        return f"Polynomial({self.dims}, {self.to_text()!r})"

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        """Render as ``c*X[i,j]^e*...`` terms joined by " + " / " - ",
        variables within a term in decreasing order."""
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for pos, (exp, coeff) in enumerate(self.terms):
            factors = []
            for i, row in enumerate(exp):
                for j, e in enumerate(row):
                    if e == 1:
                        factors.append(f"X[{i + 1},{j + 1}]")
                    elif e > 1:
                        factors.append(f"X[{i + 1},{j + 1}]^{e}")
            body = "*".join([_coeff_text(abs(coeff))] + factors)
            if pos == 0:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append((" + " if coeff > 0 else " - ") + body)
        return "".join(chunks)

    @classmethod
    def from_text(cls, text: str, dims: tuple[int, int]) -> "Polynomial":
        return _parse_text(text, dims)

    # -- JSON format ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "terms": [
                {"coeff": _coeff_text(c), "exp": [list(row) for row in e]} for e, c in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Polynomial":
        dims = (int(data["dims"][0]), int(data["dims"][1]))
        terms = [
            (tuple(tuple(int(e) for e in row) for row in t["exp"]), Fraction(t["coeff"]))
            for t in data["terms"]
        ]
        return cls(dims, terms)


_ZERO = Fraction(0)


def _coeff_text(c: Fraction) -> str:
    return str(c)  # "5" or "num/den"


_TERM_FACTOR = re.compile(r"^X\[(\d+),(\d+)\](?:\^(\d+))?$")


def _parse_text(text: str, dims: tuple[int, int]) -> Polynomial:
    s = text.strip().replace("−", "-")
    if s == "0":
        return Polynomial.zero(dims)
    # split into signed chunks on " + " / " - "
    pieces = re.split(r" ([+-]) ", s)
    signed: list[tuple[int, str]] = []
    head = pieces[0]
    sign = 1
    if head.startswith("-"):
        sign, head = -1, head[1:]
    signed.append((sign, head))
    for op, chunk in zip(pieces[1::2], pieces[2::2]):
        signed.append((1 if op == "+" else -1, chunk))
    terms = []
    for sign, chunk in signed:
        factors = chunk.split("*")
        coeff = Fraction(factors[0]) * sign
        exp = [[0] * dims[1] for _ in range(dims[0])]
        for factor in factors[1:]:
            m = _TERM_FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            i, j = int(m.group(1)), int(m.group(2))
            e = int(m.group(3)) if m.group(3) else 1
            if not (1 <= i <= dims[0] and 1 <= j <= dims[1]):
                raise ValueError(f"variable X[{i},{j}] out of range for dims {dims}")
            exp[i - 1][j - 1] += e
        terms.append((tuple(map(tuple, exp)), coeff))
    return Polynomial(dims, terms)


# -- S-polynomials and division ---------------------------------------------


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """S(f,g) = (lcm/lt(f))*f - (lcm/lt(g))*g, cancelling the leading terms."""
    if f.is_zero() or g.is_zero():
        raise ValueError("s_polynomial of a zero polynomial")
    f._check_dims(g)
    cf, mf = f.leading_term()
    cg, mg = g.leading_term()
    lcm = monomial_lcm(mf, mg)
    left = Polynomial.monomial(f.dims, monomial_div(lcm, mf), Fraction(1, 1) / cf) * f
    right = Polynomial.monomial(g.dims, monomial_div(lcm, mg), Fraction(1, 1) / cg) * g
    return left - right


def polynomial_division(
    p: Polynomial, divisors: Sequence[Polynomial]
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: returns (quotients, remainder) with
    p = sum(q_i * divisors_i) + remainder and no monomial of the remainder
    divisible by any divisor's leading monomial.

    Strategy: always rewrite the current lex-largest reducible monomial using
    the earliest divisor in list order whose leading monomial divides it.
    """
    for d in divisors:
        if d.is_zero():
            raise ValueError("zero divisor")
        p._check_dims(d)
    dims = p.dims
    leads = [(flatten(d.leading_term()[1]), d.leading_term()[0], d) for d in divisors]
    work: dict[tuple[int, ...], Fraction] = {flatten(e): c for e, c in p.terms}
    heap = [tuple(-e for e in w) for w in work]
    heapq.heapify(heap)
    remainder: dict[tuple[int, ...], Fraction] = {}
    quotients: list[dict[tuple[int, ...], Fraction]] = [{} for _ in divisors]
    while heap:
        neg = heapq.heappop(heap)
        w = tuple(-e for e in neg)
        if w not in work:
            continue
        c = work.pop(w)
        for idx, (lw, lc, d) in enumerate(leads):
            if all(x <= y for x, y in zip(lw, w)):
                q = tuple(y - x for x, y in zip(lw, w))
                ratio = c / lc
                quotients[idx][q] = quotients[idx].get(q, _ZERO) + ratio
                for exp, coeff in d.terms[1:]:
                    nw = tuple(a + b for a, b in zip(q, flatten(exp)))
                    prev = work.get(nw)
                    if prev is None:
                        work[nw] = -ratio * coeff
                        heapq.heappush(heap, tuple(-e for e in nw))
                    else:
                        val = prev - ratio * coeff
                        if val:
                            work[nw] = val
                        else:
                            del work[nw]
                break
        else:
            remainder[w] = c
    rem_poly = Polynomial(dims, ((unflatten(w, dims), c) for w, c in remainder.items()))
    quot_polys = [
        Polynomial(dims, ((unflatten(w, dims), c) for w, c in q.items())) for q in quotients
    ]
    return quot_polys, rem_poly


def normal_form(p: Polynomial, divisors: Sequence[Polynomial]) -> Polynomial:
    """Remainder of p under multivariate division by the ordered divisor list."""
    return polynomial_division(p, divisors)[1]
