"""Shapes, semistandard tableaux, keys, row end and row bound tableaux.

Tableaux are stored column by column; ``columns[j-1][i-1]`` is the value in
column j and row i.  Column 0 is a virtual inert column holding i in row i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, InternalError
from .maps import Chain, RPermutation, core, perm_of_chain
from .rtuples import RSet, RTuple, is_upper

__all__ = [
    "Partition",
    "Tableau",
    "r_of_shape",
    "content",
    "row_end_list",
    "key_of",
    "perm_of_key",
    "is_key",
    "is_gapless_key",
    "row_end_max",
    "enumerate_tableaux",
    "count_tableaux",
    "row_bound_max",
    "leq",
    "join",
    "meet",
    "principal_ideal",
    "minimum_tableau",
    "partitions_in_box",
    "minimal_shape",
]


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing n-tuple of nonnegative integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(v) for v in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise DomainError("a partition needs at least one part")
        if any(v < 0 for v in parts):
            raise DomainError(f"partition {list(parts)} has a negative part")
        for i in range(len(parts) - 1):
            if parts[i] < parts[i + 1]:
                raise DomainError(f"partition {list(parts)} increases at part {i + 1}")

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def column_lengths(self) -> tuple[int, ...]:
        first = self.parts[0]
        return tuple(sum(1 for v in self.parts if v >= j) for j in range(1, first + 1))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """lambda_i for 1-based i, with lambda_0 read as lambda_1."""
        return self.parts[max(i, 1) - 1]

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def r_of_shape(shape: Partition) -> RSet:
    """Distinct column lengths below n."""
    lengths = sorted({z for z in shape.column_lengths if z < shape.n})
    return RSet(shape.n, tuple(lengths))


def minimal_shape(rset: RSet) -> Partition:
    """The smallest shape with one column of each length in R."""
    return Partition(tuple(sum(1 for q in rset.elements if q >= i) for i in range(1, rset.n + 1)))


def partitions_in_box(n: int, rows: int, cols: int) -> Iterator[Partition]:
    """All n-part partitions with at most ``rows`` nonzero parts, each at most ``cols``."""

    def rec(prefix: list[int], cap: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        top = cap if len(prefix) < rows else 0
        for v in range(top, -1, -1):
            yield from rec(prefix + [v], v)

    for parts in rec([], cols):
        yield Partition(parts)


class Tableau:
    """A semistandard filling of a shape with values in [n]."""

    __slots__ = ("shape", "columns")

    def __init__(self, shape: Partition, columns: Sequence[Sequence[int]], check: bool = True):
        self.shape = shape
        self.columns = tuple(tuple(int(v) for v in col) for col in columns)
        if check:
            self._validate()

    @classmethod
    def _trusted(cls, shape: Partition, columns: tuple[tuple[int, ...], ...]) -> Tableau:
        obj = cls.__new__(cls)
        obj.shape = shape
        obj.columns = columns
        return obj

    def _validate(self) -> None:
        n = self.shape.n
        lengths = self.shape.column_lengths
        if len(self.columns) != len(lengths):
            raise DomainError(f"shape {self.shape} has {len(lengths)} columns, got {len(self.columns)}")
        for j, (col, z) in enumerate(zip(self.columns, lengths), start=1):
            if len(col) != z:
                raise DomainError(f"column {j} has {len(col)} boxes, expected {z}")
            for i, v in enumerate(col, start=1):
                if not 1 <= v <= n:
                    raise DomainError(f"value {v} at column {j}, row {i} is outside [1, {n}]")
                if i > 1 and col[i - 2] >= v:
                    raise DomainError(f"column {j} does not strictly increase at row {i}")
            if j > 1:
                left = self.columns[j - 2]
                for i, v in enumerate(col, start=1):
                    if left[i - 1] > v:
                        raise DomainError(f"row {i} decreases between columns {j - 1} and {j}")

    @property
    def n(self) -> int:
        return self.shape.n

    def value(self, j: int, i: int) -> int:
        """T_j(i) with 1-based column j (0 is the latent column) and row i."""
        if j == 0:
            return i
        return self.columns[j - 1][i - 1]

    def column_set(self, j: int) -> frozenset[int]:
        return frozenset(self.columns[j - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __hash__(self) -> int:
        return hash((self.shape.parts, self.columns))

    def __repr__(self) -> str:
        return f"Tableau(shape={self.shape.parts}, columns={self.columns})"

    def render(self) -> str:
        """Rows of aligned integers; an empty shape renders as an empty string."""
        if not self.columns:
            return ""
        width = max(len(str(v)) for col in self.columns for v in col)
        rows = []
        for i in range(len(self.columns[0])):
            row = [str(col[i]).rjust(width) for col in self.columns if len(col) > i]
            rows.append(" ".join(row))
        return "\n".join(rows)

    def to_json(self) -> dict:
        return {"n": self.n, "shape": list(self.shape.parts), "columns": [list(c) for c in self.columns]}

    @classmethod
    def from_json(cls, data: dict | str) -> Tableau:
        if isinstance(data, str):
            data = json.loads(data)
        shape = Partition(tuple(data["shape"]))
        if data.get("n", shape.n) != shape.n:
            raise DomainError(f"tableau JSON has n = {data['n']} but shape has {shape.n} parts")
        return cls(shape, data["columns"])


def content(t: Tableau) -> tuple[int, ...]:
    counts = [0] * t.n
    for col in t.columns:
        for v in col:
            counts[v - 1] += 1
    return tuple(counts)


def row_end_list(t: Tableau) -> RTuple:
    """omega_i = T_{lambda_i}(i), using the latent column for empty rows."""
    return RTuple(r_of_shape(t.shape), tuple(t.value(t.shape.parts[i - 1], i) for i in range(1, t.n + 1)))


def _check_rset(shape: Partition, rset: RSet, what: str) -> RSet:
    expected = r_of_shape(shape)
    if rset != expected:
        raise DomainError(f"{what} has R = {rset} but shape {shape} needs R = {expected}")
    return expected


def key_of(shape: Partition, p: RTuple) -> Tableau:
    """The key whose columns of length q_h hold the first q_h entries of p, sorted."""
    rset = _check_rset(shape, p.rset, "permutation")
    p = p if isinstance(p, RPermutation) else RPermutation(p.rset, p.entries)
    n = shape.n
    q = rset.q
    columns: list[tuple[int, ...]] = [tuple(range(1, n + 1))] * shape.parts[n - 1]
    for h in range(rset.r, 0, -1):
        copies = shape.part(q[h]) - shape.part(q[h + 1])
        columns.extend([tuple(sorted(p.entries[: q[h]]))] * copies)
    return Tableau._trusted(shape, tuple(columns))


def is_key(t: Tableau) -> bool:
    """Column sets weakly shrink from left to right."""
    return all(t.column_set(j) >= t.column_set(j + 1) for j in range(1, len(t.columns)))


def _key_chain(y: Tableau) -> Chain:
    if not is_key(y):
        raise DomainError("tableau is not a key: column sets are not nested")
    rset = r_of_shape(y.shape)
    sets: dict[int, frozenset[int]] = {}
    for col in y.columns:
        sets.setdefault(len(col), frozenset(col))
    n = y.n
    return Chain(rset, tuple(frozenset(range(1, n + 1)) if q == n else sets.get(q, frozenset()) for q in rset.q))


def perm_of_key(y: Tableau) -> RPermutation:
    return perm_of_chain(_key_chain(y))


def is_gapless_key(y: Tableau) -> bool:
    """Between the first new value b and the old maximum m, a longer column must
    hold the consecutive run b, b+1, ..., m."""
    if not is_key(y):
        raise DomainError("is_gapless_key needs a key")
    rset = r_of_shape(y.shape)
    by_length: dict[int, tuple[int, ...]] = {}
    for col in y.columns:
        by_length.setdefault(len(col), col)
    q = rset.q
    for h in range(1, rset.r):
        short, tall = by_length[q[h]], by_length[q[h + 1]]
        b = min(set(tall) - set(short))
        m = short[-1]
        if b > m:
            continue
        i, k = tall.index(b), tall.index(m)
        if tall[i : k + 1] != tuple(range(b, m + 1)):
            return False
    return True


def row_end_max(shape: Partition, a: RTuple) -> Tableau:
    """The entrywise largest tableau whose row ends are the R-increasing upper tuple a."""
    rset = _check_rset(shape, a.rset, "tuple")
    if not is_upper(a):
        raise DomainError(f"row_end_max needs an upper tuple, got {a}")
    n = shape.n
    q = rset.q
    width = shape.parts[0]
    cols: list[list[int] | None] = [None] * (width + 2)
    for h in range(1, rset.r + 1):
        for j in range(shape.part(q[h]), shape.part(q[h + 1]), -1):
            col = [0] * q[h]
            for i in range(q[h - 1] + 1, q[h] + 1):
                col[i - 1] = a.entries[i - 1]
            for i in range(q[h - 1], 0, -1):
                col[i - 1] = min(col[i] - 1, cols[j + 1][i - 1])
            cols[j] = col
    for j in range(1, shape.parts[n - 1] + 1):
        cols[j] = list(range(1, n + 1))
    try:
        return Tableau(shape, [cols[j] for j in range(1, width + 1)])
    except DomainError as exc:
        raise InternalError(f"row end max construction left the tableau set: {exc}") from None


def _fillings(shape: Partition, cap: Sequence[Sequence[int]]) -> Iterator[Tableau]:
    """Every tableau bounded cellwise by ``cap``, lexicographic in column-major order."""
    n = shape.n
    zeta = shape.column_lengths
    width = len(zeta)
    # Tighten the caps so every partial filling extends: a cell is bounded by
    # the cell below (minus one) and by the cell to its right.
    eff = [list(min(v, n) for v in cap[j]) for j in range(width)]
    for j in range(width - 1, -1, -1):
        for i in range(zeta[j] - 1, -1, -1):
            if i + 1 < zeta[j]:
                eff[j][i] = min(eff[j][i], eff[j][i + 1] - 1)
            if j + 1 < width and i < zeta[j + 1]:
                eff[j][i] = min(eff[j][i], eff[j + 1][i])
            if eff[j][i] < i + 1:
                return
    cells = [(j, i) for j in range(width) for i in range(zeta[j])]
    grid = [[0] * z for z in zeta]
    total = len(cells)

    def rec(k: int) -> Iterator[Tableau]:
        if k == total:
            yield Tableau._trusted(shape, tuple(tuple(c) for c in grid))
            return
        j, i = cells[k]
        low = grid[j][i - 1] + 1 if i else 1
        if j and grid[j - 1][i] > low:
            low = grid[j - 1][i]
        column = grid[j]
        for v in range(low, eff[j][i] + 1):
            column[i] = v
            yield from rec(k + 1)

    yield from rec(0)


def enumerate_tableaux(shape: Partition, bounds: RTuple | None = None) -> Iterator[Tableau]:
    """All tableaux of the shape, or those with row i bounded by bounds_i.

    Order: lexicographic on the column-major value vector, smallest first.
    Non-upper bounds give an empty stream.
    """
    zeta = shape.column_lengths
    n = shape.n
    if bounds is None:
        return _fillings(shape, [[n] * z for z in zeta])
    _check_rset(shape, bounds.rset, "bounds")
    if not is_upper(bounds):
        return iter(())
    return _fillings(shape, [[bounds.entries[i] for i in range(z)] for z in zeta])


def count_tableaux(shape: Partition, bounds: RTuple | None = None) -> int:
    return sum(1 for _ in enumerate_tableaux(shape, bounds))


def row_bound_max(shape: Partition, beta: RTuple) -> Tableau:
    """The largest element of the row bound set, via the core of beta."""
    _check_rset(shape, beta.rset, "bounds")
    if not is_upper(beta):
        raise DomainError(f"row_bound_max needs an upper tuple, got {beta}")
    return row_end_max(shape, core(beta))


def _same_shape(t: Tableau, u: Tableau) -> None:
    if t.shape != u.shape:
        raise DomainError(f"shapes differ: {t.shape} and {u.shape}")


def leq(t: Tableau, u: Tableau) -> bool:
    _same_shape(t, u)
    return all(a <= b for ct, cu in zip(t.columns, u.columns) for a, b in zip(ct, cu))


def _combine(t: Tableau, u: Tableau, pick) -> Tableau:
    _same_shape(t, u)
    cols = tuple(tuple(pick(a, b) for a, b in zip(ct, cu)) for ct, cu in zip(t.columns, u.columns))
    try:
        return Tableau(t.shape, cols)
    except DomainError as exc:
        raise InternalError(f"lattice operation left the tableau set: {exc}") from None


def join(t: Tableau, u: Tableau) -> Tableau:
    return _combine(t, u, max)


def meet(t: Tableau, u: Tableau) -> Tableau:
    return _combine(t, u, min)


def principal_ideal(t: Tableau) -> Iterator[Tableau]:
    """Every tableau of the same shape lying entrywise below t."""
    return _fillings(t.shape, t.columns)


def minimum_tableau(shape: Partition) -> Tableau:
    return Tableau._trusted(shape, tuple(tuple(range(1, z + 1)) for z in shape.column_lengths))

