"""The cubic-generator ideal of 3x3 generalized permanents and its Groebner check.

For a k x (m-k) variable matrix X, the ideal is generated by one cubic per
pair of size-3 multisets (rows {p<=q<=r}, columns {a<=b<=c}): the sum over all
six arrangements (sigma in S_3, counted with multiplicity) of
X[p,sigma(a)] * X[q,sigma(b)] * X[r,sigma(c)].  Each generator has 1, 2, 3 or
6 distinct terms with positive integer coefficients summing to 6, and its
leading monomial pairs the sorted rows with the sorted columns.

``buchberger_verify`` checks the Groebner property by reducing the
S-polynomial of every pair of generators with non-coprime leading monomials
to zero.  Pairs with coprime leads are skipped (their S-polynomials always
reduce to zero) and counted separately.  The reduction loop works on a compact
word representation of monomials; it implements the same strategy as
``poly.normal_form`` (rewrite the lex-largest monomial by the earliest
dividing generator) with integer-only arithmetic.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Callable, NamedTuple, Optional

from .poly import Exponents, Polynomial, normal_form as poly_normal_form


class GeneratorLabel(NamedTuple):
    """Sorted row and column multisets (p<=q<=r), (a<=b<=c), 1-based."""

    rows: tuple[int, int, int]
    cols: tuple[int, int, int]


@dataclass(frozen=True)
class IdealPresentation:
    m: int
    k: int
    generators: tuple[tuple[GeneratorLabel, Polynomial], ...]

    @property
    def dims(self) -> tuple[int, int]:
        return (self.k, self.m - self.k)


@dataclass(frozen=True)
class BuchbergerReport:
    m: int
    k: int
    coprime_skipped: int
    pairs_checked: int
    all_reduced: bool
    witnesses: tuple[dict, ...]  # failing pairs, with the nonzero remainder

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "coprime_skipped": self.coprime_skipped,
            "checked": self.pairs_checked,
            "all_reduced": self.all_reduced,
            "failures": [
                {"pair": [list(map(list, w["pair"][0])), list(map(list, w["pair"][1]))],
                 "remainder": w["remainder"]}
                for w in self.witnesses
            ],
        }


def _validate_mk(m: int, k: int) -> None:
    if not (1 <= k <= m):
        raise ValueError(f"require 1 <= k <= m, got m={m}, k={k}")


def generator_labels(m: int, k: int) -> list[GeneratorLabel]:
    """All labels in canonical order: row multisets ascending, then column."""
    _validate_mk(m, k)
    n = m - k
    return [
        GeneratorLabel(rows, cols)
        for rows in itertools.combinations_with_replacement(range(1, k + 1), 3)
        for cols in itertools.combinations_with_replacement(range(1, n + 1), 3)
    ]


def generator_polynomial(m: int, k: int, label: GeneratorLabel) -> Polynomial:
    n = m - k
    acc: dict[Exponents, int] = {}
    for arrangement in itertools.permutations(label.cols):
        exp = [[0] * n for _ in range(k)]
        for i, j in zip(label.rows, arrangement):
            exp[i - 1][j - 1] += 1
        key = tuple(map(tuple, exp))
        acc[key] = acc.get(key, 0) + 1
    return Polynomial((k, n), ((e, Fraction(c)) for e, c in acc.items()))


def generators(m: int, k: int) -> IdealPresentation:
    """The full generator family; count is C(k+2,3) * C(m-k+2,3)."""
    gens = tuple(
        (label, generator_polynomial(m, k, label)) for label in generator_labels(m, k)
    )
    assert len(gens) == comb(k + 2, 3) * comb(m - k + 2, 3)
    return IdealPresentation(m, k, gens)


def leading_monomial_set(m: int, k: int) -> set[Exponents]:
    """Leading monomials of all generators: one distinct cubic per generator."""
    return {poly.leading_term()[1] for _, poly in generators(m, k).generators}


def quotient_normal_form(p: Polynomial, m: int, k: int) -> Polynomial:
    """Normal form of p against the generator family, i.e. the expansion of
    p's residue class in the standard-monomial basis of the quotient ring."""
    _validate_mk(m, k)
    if p.dims != (k, m - k):
        raise ValueError(f"polynomial dims {p.dims} do not match (k, m-k)=({k},{m - k})")
    return poly_normal_form(p, [g for _, g in generators(m, k).generators])


# -- fast word-based reduction for the Buchberger check ----------------------
#
# A monomial is a sorted tuple of variable ids ((i-1)*n + (j-1)); for
# homogeneous polynomials, ascending tuple comparison of words is the
# *reverse* of the lex monomial order, so a min-heap on words pops the
# lex-largest monomial first.

Word = tuple[int, ...]


class _FastGens:
    def __init__(self, m: int, k: int):
        n = m - k
        self.labels = generator_labels(m, k)
        self.terms: list[list[tuple[Word, int]]] = []
        self.lead_word: list[Word] = []
        self.lead_coeff: list[int] = []
        self.lead_vars: list[frozenset[int]] = []
        self.lead_index: dict[Word, int] = {}
        for gi, label in enumerate(self.labels):
            acc: dict[Word, int] = {}
            for arrangement in itertools.permutations(label.cols):
                word = tuple(
                    sorted((i - 1) * n + (j - 1) for i, j in zip(label.rows, arrangement))
                )
                acc[word] = acc.get(word, 0) + 1
            # ascending word order = descending monomial order reversed; the
            # lex-largest monomial is the *smallest* word
            ordered = sorted(acc.items())
            lead_w, lead_c = ordered[0]
            self.terms.append(ordered)
            self.lead_word.append(lead_w)
            self.lead_coeff.append(lead_c)
            self.lead_vars.append(frozenset(lead_w))
            self.lead_index[lead_w] = gi

    def find_divisor(self, word: Word) -> Optional[int]:
        """Smallest generator index whose leading monomial divides the word."""
        index = self.lead_index
        best: Optional[int] = None
        for triple in set(itertools.combinations(word, 3)):
            gi = index.get(triple)
            if gi is not None and (best is None or gi < best):
                best = gi
        return best


def _word_msub(word: Word, sub: Word) -> Word:
    out = list(word)
    for v in sub:
        out.remove(v)
    return tuple(out)


def _word_lcm(a: Word, b: Word) -> Word:
    counts: dict[int, int] = {}
    for v in a:
        counts[v] = counts.get(v, 0) + 1
    bc: dict[int, int] = {}
    for v in b:
        bc[v] = bc.get(v, 0) + 1
    for v, c in bc.items():
        if counts.get(v, 0) < c:
            counts[v] = c
    return tuple(sorted(itertools.chain.from_iterable([v] * c for v, c in counts.items())))


def _reduces_to_zero(p: dict[Word, int], gens: _FastGens) -> bool:
    """Destructively reduce p; True iff the remainder is empty.

    p is only ever rescaled by positive integers, which does not affect
    whether the normal form vanishes.
    """
    heap = list(p)
    heapq.heapify(heap)
    find = gens.find_divisor
    terms = gens.terms
    while heap:
        w = heapq.heappop(heap)
        if w not in p:
            continue
        gi = find(w)
        if gi is None:
            return False
        c = p.pop(w)
        g_terms = terms[gi]
        lead_w, lc = g_terms[0]
        g0 = gcd(c, lc)
        scale = lc // g0
        mult = c // g0
        if scale != 1:
            for key in p:
                p[key] *= scale
        q = _word_msub(w, lead_w)
        for tw, tc in g_terms[1:]:
            nw = tuple(sorted(q + tw))
            prev = p.get(nw)
            if prev is None:
                p[nw] = -mult * tc
                heapq.heappush(heap, nw)
            else:
                val = prev - mult * tc
                if val:
                    p[nw] = val
                else:
                    del p[nw]
    return True


def _spoly_words(gens: _FastGens, a: int, b: int) -> dict[Word, int]:
    """Integer-scaled S-polynomial of generators a and b in word form."""
    lead_a, ca = gens.lead_word[a], gens.lead_coeff[a]
    lead_b, cb = gens.lead_word[b], gens.lead_coeff[b]
    lcm = _word_lcm(lead_a, lead_b)
    qa = _word_msub(lcm, lead_a)
    qb = _word_msub(lcm, lead_b)
    out: dict[Word, int] = {}
    for tw, tc in gens.terms[a]:
        nw = tuple(sorted(qa + tw))
        out[nw] = out.get(nw, 0) + cb * tc
    for tw, tc in gens.terms[b]:
        nw = tuple(sorted(qb + tw))
        val = out.get(nw, 0) - ca * tc
        if val:
            out[nw] = val
        elif nw in out:
            del out[nw]
    return out


def buchberger_verify(
    m: int, k: int, progress: Optional[Callable[[int, int], None]] = None
) -> BuchbergerReport:
    """Check Buchberger's criterion over all generator pairs.

    Every unordered pair with non-coprime leading monomials has its
    S-polynomial reduced against the full generator list; pairs with coprime
    leads are skipped and counted.  ``progress(done, total)`` is invoked
    periodically when given.
    """
    _validate_mk(m, k)
    gens = _FastGens(m, k)
    count = len(gens.labels)
    total = count * (count - 1) // 2
    lead_vars = gens.lead_vars
    coprime = 0
    checked = 0
    done = 0
    failures: list[dict] = []
    for a in range(count):
        va = lead_vars[a]
        for b in range(a + 1, count):
            if va.isdisjoint(lead_vars[b]):
                coprime += 1
            else:
                checked += 1
                if not _reduces_to_zero(_spoly_words(gens, a, b), gens):
                    failures.append(_failure_witness(m, k, gens.labels, a, b))
            done += 1
        if progress is not None:
            progress(done, total)
    return BuchbergerReport(
        m=m,
        k=k,
        coprime_skipped=coprime,
        pairs_checked=checked,
        all_reduced=not failures,
        witnesses=tuple(failures),
    )


def _failure_witness(m: int, k: int, labels: list[GeneratorLabel], a: int, b: int) -> dict:
    from .poly import s_polynomial

    ga = generator_polynomial(m, k, labels[a])
    gb = generator_polynomial(m, k, labels[b])
    remainder = quotient_normal_form(s_polynomial(ga, gb), m, k)
    return {"pair": (labels[a], labels[b]), "remainder": remainder.to_text()}
