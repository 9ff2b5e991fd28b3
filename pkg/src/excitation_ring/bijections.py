"""The bijection chain: matrices <-> tableau pairs <-> plane partitions <-> Dyck words.

Nonnegative integer matrices map to pairs of semistandard Young tableaux by
RSK row insertion; a tableau pair maps to a bounded plane partition by
overlaying the two Gelfand-Tsetlin patterns on the lower-left and upper-right
triangles of a matrix; and plane partitions with entries at most 2 map to
Dyck words through their central-letter profile.  Every map here has its
inverse implemented explicitly, and composing the chain carries the
width-at-most-2 matrices bijectively onto Dyck words of length 2m+2 with k
valleys.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Sequence

from .poly import Exponents

Partition = tuple[int, ...]


def is_partition(parts: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(parts, parts[1:])) and all(p > 0 for p in parts)


def conjugate(parts: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not parts:
        return ()
    out = []
    for i in range(parts[0]):
        out.append(sum(1 for p in parts if p > i))
    return tuple(out)


def partition_length(parts: Partition) -> int:
    return len(parts)


@dataclass(frozen=True)
class SSYT:
    """Semistandard Young tableau: rows weakly increase, columns strictly
    increase, entries in [1, content_bound]."""

    rows: tuple[tuple[int, ...], ...]
    content_bound: int

    def __post_init__(self):
        shape = tuple(len(r) for r in self.rows)
        if not is_partition(shape) and shape != ():
            raise ValueError(f"tableau shape {shape} is not a partition")
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                if not (1 <= v <= self.content_bound):
                    raise ValueError(f"entry {v} at {(r, c)} outside [1, {self.content_bound}]")
                if c + 1 < len(row) and row[c + 1] < v:
                    raise ValueError(f"row {r} not weakly increasing")
                if r + 1 < len(self.rows) and c < len(self.rows[r + 1]) and self.rows[r + 1][c] <= v:
                    raise ValueError(f"column {c} not strictly increasing")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], content_bound: int) -> "SSYT":
        return cls(tuple(tuple(r) for r in rows), content_bound)


@dataclass(frozen=True)
class GTPattern:
    """Triangular array of nested shapes: level i is a weakly decreasing list
    of i nonnegative integers, and consecutive levels interlace."""

    levels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for i, level in enumerate(self.levels):
            if len(level) != i + 1:
                raise ValueError(f"level {i + 1} has {len(level)} entries, expected {i + 1}")
            if any(a < b for a, b in zip(level, level[1:])) or any(v < 0 for v in level):
                raise ValueError(f"level {i + 1} is not weakly decreasing and nonnegative")
            if i:
                below = self.levels[i - 1]
                for j, v in enumerate(below):
                    if not (level[j] >= v >= level[j + 1]):
                        raise ValueError(f"levels {i} and {i + 1} do not interlace")


@dataclass(frozen=True)
class PlanePartition:
    """Matrix with entries <= bound, weakly decreasing along rows and columns."""

    entries: tuple[tuple[int, ...], ...]
    bound: int

    def __post_init__(self):
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                if not (0 <= v <= self.bound):
                    raise ValueError(f"entry {v} at {(i, j)} outside [0, {self.bound}]")
                if j + 1 < len(row) and row[j + 1] > v:
                    raise ValueError(f"row {i} not weakly decreasing")
                if i + 1 < len(self.entries) and self.entries[i + 1][j] > v:
                    raise ValueError(f"column {j} not weakly decreasing")

    @property
    def dims(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def with_bound(self, bound: int) -> "PlanePartition":
        return PlanePartition(self.entries, bound)

    def to_json(self) -> dict:
        return {"entries": [list(r) for r in self.entries], "bound": self.bound}

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], bound: int) -> "PlanePartition":
        return cls(tuple(tuple(r) for r in rows), bound)


@dataclass(frozen=True)
class DyckWord:
    """Ballot word over {u, d}: every prefix has at least as many u's as d's."""

    word: str

    def __post_init__(self):
        height = 0
        for ch in self.word:
            if ch == "u":
                height += 1
            elif ch == "d":
                height -= 1
            else:
                raise ValueError(f"letter {ch!r} is not 'u' or 'd'")
            if height < 0:
                raise ValueError("word is not ballot")
        if height != 0:
            raise ValueError("word has unequal u and d counts")

    def __len__(self) -> int:
        return len(self.word)

    @property
    def valleys(self) -> tuple[int, ...]:
        """Positions (0-based, of the 'd') of all du-factors."""
        w = self.word
        return tuple(p for p in range(len(w) - 1) if w[p] == "d" and w[p + 1] == "u")


@dataclass(frozen=True)
class DyckStats:
    valleys: tuple[int, ...]
    central: tuple[int, ...]
    up: tuple[int, ...]
    down: tuple[int, ...]


# -- RSK ----------------------------------------------------------------------


def _row_insert(rows: list[list[int]], x: int) -> tuple[int, int]:
    """Bump x through the rows; returns the (row, col) of the added box."""
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            return (r, 0)
        row = rows[r]
        idx = bisect_right(row, x)
        if idx == len(row):
            row.append(x)
            return (r, idx)
        x, row[idx] = row[idx], x
        r += 1


def rsk(matrix: Exponents) -> tuple[SSYT, SSYT]:
    """Row-insertion RSK on the row-major biword of the matrix.

    Returns (P, Q): the insertion tableau P records column indices (content
    bound = number of columns), the recording tableau Q records row indices
    (content bound = number of rows).  The common shape's first part equals
    the width of the matrix.
    """
    a = len(matrix)
    b = len(matrix[0]) if a else 0
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for i in range(a):
        for j in range(b):
            for _ in range(matrix[i][j]):
                r, _c = _row_insert(p_rows, j + 1)
                if r == len(q_rows):
                    q_rows.append([])
                q_rows[r].append(i + 1)
    return (
        SSYT(tuple(tuple(r) for r in p_rows), b),
        SSYT(tuple(tuple(r) for r in q_rows), a),
    )


def rsk_inverse(p: SSYT, q: SSYT) -> Exponents:
    """Reverse bumping; recovers the unique matrix with rsk(M) = (p, q).

    The matrix has q.content_bound rows and p.content_bound columns.
    """
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    a, b = q.content_bound, p.content_bound
    p_rows = [list(r) for r in p.rows]
    q_rows = [list(r) for r in q.rows]
    matrix = [[0] * b for _ in range(a)]
    for _ in range(sum(p.shape)):
        # the box inserted last: largest recording value, rightmost column
        top = max(max(row) for row in q_rows if row)
        r_best, c_best = -1, -1
        for r, row in enumerate(q_rows):
            for c, v in enumerate(row):
                if v == top and c > c_best:
                    r_best, c_best = r, c
        y = p_rows[r_best].pop()
        q_rows[r_best].pop()
        for rr in range(r_best - 1, -1, -1):
            row = p_rows[rr]
            idx = bisect_left(row, y) - 1
            if idx < 0:
                raise ValueError("malformed tableau pair: reverse bump fell off")
            y, row[idx] = row[idx], y
        matrix[top - 1][y - 1] += 1
        if q_rows and not q_rows[-1]:
            q_rows.pop()
            p_rows.pop()
    return tuple(tuple(r) for r in matrix)


# -- Gelfand-Tsetlin patterns and the plane-partition correspondence ----------


def ssyt_to_gt(tableau: SSYT, n: int) -> GTPattern:
    """Level i is the shape of the sub-tableau with entries <= i, padded with
    zeros to length i; level n is the full shape."""
    if any(v > n for row in tableau.rows for v in row):
        raise ValueError(f"tableau entry exceeds {n}")
    levels = []
    for i in range(1, n + 1):
        lens = [bisect_right(row, i) for row in tableau.rows]
        while lens and lens[-1] == 0:
            lens.pop()
        levels.append(tuple(lens) + (0,) * (i - len(lens)))
    return GTPattern(tuple(levels))


def gt_to_ssyt(pattern: GTPattern, content_bound: int | None = None) -> SSYT:
    """Rebuild the tableau whose nested level shapes form the pattern."""
    n = len(pattern.levels)
    if content_bound is None:
        content_bound = n
    top = pattern.levels[-1] if n else ()
    num_rows = sum(1 for v in top if v > 0)
    rows: list[list[int]] = [[] for _ in range(num_rows)]
    prev = [0] * num_rows
    for i in range(1, n + 1):
        level = pattern.levels[i - 1]
        for r in range(num_rows):
            cur = level[r] if r < len(level) else 0
            rows[r].extend([i] * (cur - prev[r]))
            prev[r] = cur
    return SSYT(tuple(tuple(r) for r in rows), content_bound)


def tableaux_to_pp(
    p: SSYT, q: SSYT, a: int, b: int, bound: int | None = None
) -> PlanePartition:
    """Overlay the level shapes of p (entries <= a) and q (entries <= b) into
    an a x b plane partition: entry (i, j) is level a-i+j of p at part j when
    i >= j, and level b-j+i of q at part i when i <= j (1-based).  The largest
    entry is the number of columns of the common shape."""
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    gt_p = ssyt_to_gt(p, a)
    gt_q = ssyt_to_gt(q, b)
    entries = []
    for i in range(1, a + 1):
        row = []
        for j in range(1, b + 1):
            if i >= j:
                row.append(gt_p.levels[a - i + j - 1][j - 1])
            else:
                row.append(gt_q.levels[b - j + i - 1][i - 1])
        entries.append(tuple(row))
    shape = p.shape
    natural_bound = shape[0] if shape else 0
    if bound is None:
        bound = natural_bound
    return PlanePartition(tuple(entries), bound)


def pp_to_tableaux(pp: PlanePartition) -> tuple[SSYT, SSYT]:
    """Inverse overlay: read the two Gelfand-Tsetlin patterns off the
    lower-left and upper-right triangles (the diagonal is shared) and rebuild
    the tableau pair (first with entries <= a, second <= b)."""
    a, b = pp.dims
    entries = pp.entries
    p_levels = []
    for s in range(1, a + 1):
        level = tuple(
            entries[a - s + j - 1][j - 1] if j <= b else 0 for j in range(1, s + 1)
        )
        p_levels.append(level)
    q_levels = []
    for t in range(1, b + 1):
        level = tuple(
            entries[i - 1][b - t + i - 1] if i <= a else 0 for i in range(1, t + 1)
        )
        q_levels.append(level)
    p = gt_to_ssyt(GTPattern(tuple(p_levels)), a)
    q = gt_to_ssyt(GTPattern(tuple(q_levels)), b)
    return p, q


# -- Dyck words ----------------------------------------------------------------


def dyck_stats(w: DyckWord) -> DyckStats:
    """Valley positions, central letters, and the cumulative central-letter
    profile.

    A letter is central if it is not first, not last, and not part of a
    valley.  up[i] / down[i] count central u's / d's strictly before the
    (i+1)-th valley; the final entries count all central letters.
    """
    letters = w.word
    n = len(letters)
    valleys = w.valleys
    in_valley = set()
    for pos in valleys:
        in_valley.add(pos)
        in_valley.add(pos + 1)
    central = tuple(
        idx for idx in range(n) if idx not in (0, n - 1) and idx not in in_valley
    )
    ups = []
    downs = []
    for v_pos in valleys:
        ups.append(sum(1 for c in central if c < v_pos and letters[c] == "u"))
        downs.append(sum(1 for c in central if c < v_pos and letters[c] == "d"))
    ups.append(sum(1 for c in central if letters[c] == "u"))
    downs.append(sum(1 for c in central if letters[c] == "d"))
    return DyckStats(valleys, central, tuple(ups), tuple(downs))


def dyck_to_pp(w: DyckWord, m: int, k: int) -> PlanePartition:
    """The k x (m-k) plane partition with entries <= 2 whose row profiles are
    the central-letter counts of w; requires w of length 2m+2 with k valleys."""
    if len(w) != 2 * m + 2:
        raise ValueError(f"word length {len(w)} != 2m+2 = {2 * m + 2}")
    stats = dyck_stats(w)
    if len(stats.valleys) != k:
        raise ValueError(f"word has {len(stats.valleys)} valleys, expected {k}")
    n = m - k
    entries = []
    for i in range(1, k + 1):
        up_i = stats.up[k - i]
        down_i = stats.down[k - i]
        row = tuple(2 if down_i >= j else (1 if up_i >= j else 0) for j in range(1, n + 1))
        entries.append(row)
    return PlanePartition(tuple(entries), 2)


def pp_to_dyck(pp: PlanePartition, m: int, k: int) -> DyckWord:
    """Inverse of dyck_to_pp on k x (m-k) plane partitions with entries <= 2.

    Row i yields c_i (number of 2-entries) and c'_i (number of nonzero
    entries); reversing rows gives the cumulative central-letter profile,
    from which the word is reassembled with its initial u, final d, and
    valleys."""
    n = m - k
    entries = pp.entries
    if len(entries) != k or any(len(row) != n for row in entries):
        raise ValueError(f"plane partition dims {pp.dims} != (k, m-k) = ({k}, {n})")
    if any(v > 2 for row in entries for v in row):
        raise ValueError("entries exceed 2")
    twos = [sum(1 for v in row if v == 2) for row in entries]
    nonzeros = [sum(1 for v in row if v > 0) for row in entries]
    a_seq = [nonzeros[k - i] for i in range(1, k + 1)] + [n]
    b_seq = [twos[k - i] for i in range(1, k + 1)] + [n]
    parts = ["u"]
    prev_a = prev_b = 0
    for i in range(k + 1):
        parts.append("u" * (a_seq[i] - prev_a))
        parts.append("d" * (b_seq[i] - prev_b))
        prev_a, prev_b = a_seq[i], b_seq[i]
        if i < k:
            parts.append("du")
    parts.append("d")
    return DyckWord("".join(parts))


# -- transposition ---------------------------------------------------------------


def matrix_transpose(matrix: Exponents) -> Exponents:
    return tuple(zip(*matrix)) if matrix else ()


def pp_transpose(pp: PlanePartition) -> PlanePartition:
    return PlanePartition(matrix_transpose(pp.entries), pp.bound)


# -- the composed chain ------------------------------------------------------------


def matrix_to_pp(matrix: Exponents, m: int, k: int) -> PlanePartition:
    """Standard matrix -> (P, Q) -> plane partition in B(k, m-k, 2)."""
    p_ins, q_rec = rsk(matrix)
    return tableaux_to_pp(q_rec, p_ins, k, m - k, bound=2)


def pp_to_matrix(pp: PlanePartition) -> Exponents:
    p, q = pp_to_tableaux(pp)
    return rsk_inverse(q, p)


def matrix_to_dyck(matrix: Exponents, m: int, k: int) -> DyckWord:
    """Full chain: width-<=2 matrix -> tableau pair -> plane partition -> Dyck word."""
    return pp_to_dyck(matrix_to_pp(matrix, m, k), m, k)


def dyck_to_matrix(w: DyckWord, m: int, k: int) -> Exponents:
    return pp_to_matrix(dyck_to_pp(w, m, k))
