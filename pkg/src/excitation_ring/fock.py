"""Exact finite fermionic Fock spaces with spin, and their SU(2)-invariant part.

The single-particle space has m positions, each carrying a spin-down and a
spin-up orbital, ordered (1,down) < (1,up) < (2,down) < ... ; the d-particle
space is spanned by wedges of d distinct orbitals (Slater determinants),
encoded as occupancy bitmasks in that order.  All coefficients are exact
rationals.

The spin algebra acts through the Leibniz rule from its 2x2 matrices on spin
space, with basis convention e_up = e1, e_down = -e2; states killed by all
three of S_plus, S_minus, S_z are the spin-adapted (SU(2)-invariant) states.
Excitation operators move a particle from one of the first k positions to one
of the last m-k, summed over both spins; products of them applied to the
reference state (positions 1..k doubly occupied) realize the quotient ring of
the cubic-generator ideal inside the invariant subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple

from . import linalg
from .errors import BudgetExceeded
from .ideal import GeneratorLabel, generators
from .poly import Exponents
from .stdmono import enumerate_standard

DOWN = 0
UP = 1
_SPIN_NAMES = {DOWN: "down", UP: "up"}
_SPIN_VALUES = {"down": DOWN, "up": UP}

BASIS_BUDGET = 100_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SpinOrbital(NamedTuple):
    """Orbital at a 1-based position with spin DOWN (0) or UP (1)."""

    position: int
    spin: int

    @property
    def index(self) -> int:
        """Rank in the global order (1,down) < (1,up) < (2,down) < ..."""
        return 2 * (self.position - 1) + self.spin

    @classmethod
    def from_index(cls, index: int) -> "SpinOrbital":
        return cls(index // 2 + 1, index % 2)

    def to_json(self) -> list:
        return [self.position, _SPIN_NAMES[self.spin]]

    @classmethod
    def from_json(cls, data) -> "SpinOrbital":
        return cls(int(data[0]), _SPIN_VALUES[data[1]])


def _check_budget(m: int, d: int) -> None:
    if not (0 <= d <= 2 * m):
        raise ValueError(f"need 0 <= d <= 2m, got m={m}, d={d}")
    size = comb(2 * m, d)
    if size > BASIS_BUDGET:
        raise BudgetExceeded(f"basis size C({2 * m},{d}) = {size} exceeds {BASIS_BUDGET}")


def basis_masks(m: int, d: int) -> list[int]:
    """Occupancy bitmasks of all d-subsets, ordered lexicographically by the
    sorted orbital-index tuples."""
    _check_budget(m, d)
    masks = []
    for combo in itertools.combinations(range(2 * m), d):
        mask = 0
        for idx in combo:
            mask |= 1 << idx
        masks.append(mask)
    return masks


def mask_to_orbitals(mask: int) -> tuple[SpinOrbital, ...]:
    return tuple(SpinOrbital.from_index(i) for i in range(mask.bit_length()) if mask >> i & 1)


def orbitals_to_mask(orbitals: Iterable[SpinOrbital]) -> int:
    mask = 0
    for orb in orbitals:
        bit = 1 << orb.index
        if mask & bit:
            raise ValueError(f"repeated orbital {orb}")
        mask |= bit
    return mask


def slater_basis(m: int, d: int) -> list[tuple[SpinOrbital, ...]]:
    """The canonical ordered basis of the d-particle space; C(2m, d) wedges."""
    return [mask_to_orbitals(mask) for mask in basis_masks(m, d)]


class StateVector:
    """Sparse exact vector over the Slater basis of the (m, d) space."""

    __slots__ = ("m", "d", "components")

    def __init__(self, m: int, d: int, components: dict[int, Fraction] | None = None):
        self.m = m
        self.d = d
        comps = {}
        for mask, coeff in (components or {}).items():
            if mask.bit_count() != d:
                raise ValueError(f"mask {mask:b} has wrong particle number")
            if coeff:
                comps[mask] = coeff
        self.components = comps

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "StateVector") -> "StateVector":
        self._check(other)
        comps = dict(self.components)
        for mask, c in other.components.items():
            comps[mask] = comps.get(mask, _ZERO) + c
        return StateVector(self.m, self.d, comps)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + other.scale(-1)

    def scale(self, c) -> "StateVector":
        c = Fraction(c)
        return StateVector(self.m, self.d, {k: v * c for k, v in self.components.items()})

    def _check(self, other: "StateVector") -> None:
        if (self.m, self.d) != (other.m, other.d):
            raise ValueError("state spaces differ")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StateVector)
            and (self.m, self.d) == (other.m, other.d)
            and self.components == other.components
        )

    def __repr__(self) -> str:
        return f"StateVector(m={self.m}, d={self.d}, {self.components})"

    def to_json(self) -> dict:
        items = sorted(self.components.items())
        return {
            "m": self.m,
            "d": self.d,
            "terms": [
                {"orbitals": [o.to_json() for o in mask_to_orbitals(mask)], "coeff": str(c)}
                for mask, c in items
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StateVector":
        comps: dict[int, Fraction] = {}
        for term in data["terms"]:
            mask = orbitals_to_mask(SpinOrbital.from_json(o) for o in term["orbitals"])
            comps[mask] = comps.get(mask, _ZERO) + Fraction(term["coeff"])
        return cls(int(data["m"]), int(data["d"]), comps)


class LinearOperator:
    """Sparse exact operator between Slater-basis spaces (m, d_in) -> (m, d_out).

    Stored column-wise: columns[in_mask] = {out_mask: coefficient}.
    """

    __slots__ = ("m", "d_in", "d_out", "columns")

    def __init__(self, m: int, d_in: int, d_out: int, columns: dict[int, dict[int, Fraction]]):
        self.m = m
        self.d_in = d_in
        self.d_out = d_out
        self.columns = {
            col: {row: c for row, c in entries.items() if c}
            for col, entries in columns.items()
            if any(entries.values())
        }

    def apply(self, state: StateVector) -> StateVector:
        if (state.m, state.d) != (self.m, self.d_in):
            raise ValueError("operator domain does not match state space")
        out: dict[int, Fraction] = {}
        for mask, coeff in state.components.items():
            for row, c in self.columns.get(mask, {}).items():
                out[row] = out.get(row, _ZERO) + coeff * c
        return StateVector(self.m, self.d_out, out)

    def __call__(self, state: StateVector) -> StateVector:
        return self.apply(state)

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        """self after other."""
        if (self.m, self.d_in) != (other.m, other.d_out):
            raise ValueError("operator dimensions do not compose")
        cols: dict[int, dict[int, Fraction]] = {}
        for col, mids in other.columns.items():
            acc: dict[int, Fraction] = {}
            for mid, c1 in mids.items():
                for row, c2 in self.columns.get(mid, {}).items():
                    acc[row] = acc.get(row, _ZERO) + c1 * c2
            if acc:
                cols[col] = acc
        return LinearOperator(self.m, other.d_in, self.d_out, cols)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return self.compose(other)

    def _check(self, other: "LinearOperator") -> None:
        if (self.m, self.d_in, self.d_out) != (other.m, other.d_in, other.d_out):
            raise ValueError("operator shapes differ")

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        self._check(other)
        cols = {col: dict(entries) for col, entries in self.columns.items()}
        for col, entries in other.columns.items():
            acc = cols.setdefault(col, {})
            for row, c in entries.items():
                acc[row] = acc.get(row, _ZERO) + c
        return LinearOperator(self.m, self.d_in, self.d_out, cols)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "LinearOperator":
        c = Fraction(c)
        return LinearOperator(
            self.m,
            self.d_in,
            self.d_out,
            {col: {row: v * c for row, v in entries.items()} for col, entries in self.columns.items()},
        )

    def is_zero(self) -> bool:
        return not self.columns

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearOperator)
            and (self.m, self.d_in, self.d_out) == (other.m, other.d_in, other.d_out)
            and self.columns == other.columns
        )

    def commutator(self, other: "LinearOperator") -> "LinearOperator":
        return self.compose(other) - other.compose(self)

    def anticommutator(self, other: "LinearOperator") -> "LinearOperator":
        return self.compose(other) + other.compose(self)

    def dense_rows(self, masks_in: list[int], masks_out: list[int]) -> list[list[Fraction]]:
        """Rows over the given bases: rows[out][in]."""
        index_out = {mask: i for i, mask in enumerate(masks_out)}
        rows = [[_ZERO] * len(masks_in) for _ in masks_out]
        for c, mask in enumerate(masks_in):
            for row_mask, coeff in self.columns.get(mask, {}).items():
                rows[index_out[row_mask]][c] = coeff
        return rows


def _insertion_sign(mask: int, index: int) -> int:
    """Parity of the number of occupied orbitals below the given index."""
    below = mask & ((1 << index) - 1)
    return -1 if below.bit_count() % 2 else 1


def creation(orbital: SpinOrbital, m: int, d: int) -> LinearOperator:
    """Left wedge with the orbital: maps the (m, d) space into (m, d+1)."""
    idx = orbital.index
    if not (0 <= idx < 2 * m):
        raise ValueError(f"orbital {orbital} out of range for m={m}")
    cols: dict[int, dict[int, Fraction]] = {}
    bit = 1 << idx
    for mask in basis_masks(m, d):
        if mask & bit:
            continue
        sign = _insertion_sign(mask, idx)
        cols[mask] = {mask | bit: Fraction(sign)}
    return LinearOperator(m, d, d + 1, cols)


def annihilation(orbital: SpinOrbital, m: int, d: int) -> LinearOperator:
    """Interior product with the orbital: maps the (m, d) space into (m, d-1)."""
    idx = orbital.index
    if not (0 <= idx < 2 * m):
        raise ValueError(f"orbital {orbital} out of range for m={m}")
    cols: dict[int, dict[int, Fraction]] = {}
    bit = 1 << idx
    for mask in basis_masks(m, d):
        if not mask & bit:
            continue
        sign = _insertion_sign(mask, idx)
        cols[mask] = {mask & ~bit: Fraction(sign)}
    return LinearOperator(m, d, d - 1, cols)


SL2_GENERATOR_NAMES = ("S_plus", "S_minus", "S_z")


def sl2_action(g: str, m: int, d: int) -> LinearOperator:
    """Leibniz-rule lift of the 2x2 spin matrices to the d-particle space.

    With the convention e_up = e1 and e_down = -e2, S_plus sends a down
    orbital to minus the matching up orbital (killing up), S_minus the
    reverse, and S_z is diagonal with eigenvalue (#up - #down).
    """
    if g not in SL2_GENERATOR_NAMES:
        raise ValueError(f"unknown generator {g!r}; expected one of {SL2_GENERATOR_NAMES}")
    cols: dict[int, dict[int, Fraction]] = {}
    for mask in basis_masks(m, d):
        if g == "S_z":
            ups = sum(1 for i in range(1, 2 * m, 2) if mask >> i & 1)
            downs = sum(1 for i in range(0, 2 * m, 2) if mask >> i & 1)
            if ups != downs:
                cols[mask] = {mask: Fraction(ups - downs)}
            continue
        source_spin = DOWN if g == "S_plus" else UP
        acc: dict[int, Fraction] = {}
        for i in range(2 * m):
            if not (mask >> i & 1) or i % 2 != source_spin:
                continue
            target = i + 1 if source_spin == DOWN else i - 1
            if mask >> target & 1:
                continue
            removed = mask & ~(1 << i)
            sign = _insertion_sign(mask, i) * _insertion_sign(removed, target)
            new_mask = removed | (1 << target)
            # spin convention contributes the overall minus
            acc[new_mask] = acc.get(new_mask, _ZERO) - Fraction(sign)
        if acc:
            cols[mask] = acc
    return LinearOperator(m, d, d, cols)


def invariant_subspace(m: int, d: int) -> list[StateVector]:
    """Reduced-echelon kernel basis of the stacked S_plus/S_minus/S_z action;
    the space of spin-adapted states.  Dimension is the Narayana number
    N(m+1, d/2+1) for even d and 0 for odd d."""
    masks = basis_masks(m, d)
    rows: list[list[Fraction]] = []
    for g in SL2_GENERATOR_NAMES:
        op = sl2_action(g, m, d)
        for row in op.dense_rows(masks, masks):
            if any(row):
                rows.append(row)
    kernel = linalg.kernel_basis(rows, len(masks))
    return [
        StateVector(m, d, {masks[i]: c for i, c in enumerate(vec) if c}) for vec in kernel
    ]


def reference_state(m: int, k: int) -> StateVector:
    """Positions 1..k doubly occupied, coefficient +1."""
    if not (0 <= k <= m):
        raise ValueError(f"need 0 <= k <= m, got m={m}, k={k}")
    return StateVector(m, 2 * k, {(1 << 2 * k) - 1: _ONE})


def excitation_operator(i: int, j: int, m: int, k: int) -> LinearOperator:
    """Move a particle from position i (<= k) to position j+k, summed over both
    spins; an endomorphism of the (m, 2k) space commuting with the spin action."""
    if not (1 <= i <= k and 1 <= j <= m - k):
        raise ValueError(f"excitation indices (i={i}, j={j}) out of range for (m,k)=({m},{k})")
    src_down = SpinOrbital(i, DOWN).index
    src_up = SpinOrbital(i, UP).index
    tgt_down = SpinOrbital(j + k, DOWN).index
    tgt_up = SpinOrbital(j + k, UP).index
    cols: dict[int, dict[int, Fraction]] = {}
    for mask in basis_masks(m, 2 * k):
        acc: dict[int, Fraction] = {}
        for src, tgt in ((src_down, tgt_down), (src_up, tgt_up)):
            if not (mask >> src & 1) or (mask >> tgt & 1):
                continue
            removed = mask & ~(1 << src)
            sign = _insertion_sign(mask, src) * _insertion_sign(removed, tgt)
            new_mask = removed | (1 << tgt)
            acc[new_mask] = acc.get(new_mask, _ZERO) + Fraction(sign)
        if acc:
            cols[mask] = acc
    return LinearOperator(m, 2 * k, 2 * k, cols)


def monomial_operator(exp: Exponents, m: int, k: int) -> LinearOperator:
    """Product of excitation operators with the given exponents (row-major
    factor order; the factors commute)."""
    masks = basis_masks(m, 2 * k)
    op = LinearOperator(m, 2 * k, 2 * k, {mask: {mask: _ONE} for mask in masks})
    for i, row in enumerate(exp, start=1):
        for j, e in enumerate(row, start=1):
            for _ in range(e):
                op = excitation_operator(i, j, m, k).compose(op)
    return op


def apply_monomial(exp: Exponents, state: StateVector, m: int, k: int) -> StateVector:
    for i, row in enumerate(exp, start=1):
        for j, e in enumerate(row, start=1):
            for _ in range(e):
                state = excitation_operator(i, j, m, k).apply(state)
    return state


@dataclass(frozen=True)
class CubicRelationsReport:
    m: int
    k: int
    relations_checked: int
    all_zero: bool
    failures: tuple[GeneratorLabel, ...]

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "relations_checked": self.relations_checked,
            "all_zero": self.all_zero,
            "failures": [[list(f.rows), list(f.cols)] for f in self.failures],
        }


def verify_cubic_relations(m: int, k: int) -> CubicRelationsReport:
    """Evaluate every cubic generator at the excitation operators and check
    that it is the zero operator on the (m, 2k) space."""
    _check_budget(m, 2 * k)
    failures = []
    presentation = generators(m, k)
    count = 0
    for label, poly in presentation.generators:
        total: LinearOperator | None = None
        for exp, coeff in poly.terms:
            term = monomial_operator(exp, m, k).scale(coeff)
            total = term if total is None else total + term
        count += 1
        if total is not None and not total.is_zero():
            failures.append(label)
    return CubicRelationsReport(m, k, count, not failures, tuple(failures))


def excitation_basis(m: int, k: int) -> list[StateVector]:
    """Images of the reference state under the standard monomials in the
    excitation operators: an explicit basis of the invariant subspace.

    Raises if some image fails to be invariant or the images are linearly
    dependent -- either would signal an implementation fault, as the images
    realize the standard-monomial basis of the quotient ring.
    """
    _check_budget(m, 2 * k)
    ref = reference_state(m, k)
    sl2_ops = [sl2_action(g, m, 2 * k) for g in SL2_GENERATOR_NAMES]
    vectors = []
    for exp in enumerate_standard(m, k):
        vec = apply_monomial(exp, ref, m, k)
        if vec.is_zero():
            raise RuntimeError(f"standard monomial {exp} annihilated the reference state")
        for g, op in zip(SL2_GENERATOR_NAMES, sl2_ops):
            if not op.apply(vec).is_zero():
                raise RuntimeError(f"image of {exp} is not invariant (fails {g})")
        vectors.append(vec)
    masks = basis_masks(m, 2 * k)
    index = {mask: i for i, mask in enumerate(masks)}
    rows = []
    for vec in vectors:
        row = [_ZERO] * len(masks)
        for mask, c in vec.components.items():
            row[index[mask]] = c
        rows.append(row)
    if linalg.rank(rows) != len(vectors):
        raise RuntimeError("excitation images are linearly dependent")
    return vectors


def particle_hole(m: int, d: int) -> list[int]:
    """Basis-index bijection (m, d) -> (m, 2m-d) complementing the occupied
    up-set and down-set; entry i is the image index of basis vector i."""
    full = (1 << 2 * m) - 1
    source = basis_masks(m, d)
    target_index = {mask: i for i, mask in enumerate(basis_masks(m, 2 * m - d))}
    return [target_index[full ^ mask] for mask in source]
