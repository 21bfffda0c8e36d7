"""Divider sets, R-tuples, classification predicates and critical lists.

An R-tuple is an n-tuple over [n] that carries a set R of dividers splitting
the positions 1..n into consecutive carrels.  Entries and indices are 1-based
at the API boundary; loops below work 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import DomainError

__all__ = [
    "RSet",
    "RTuple",
    "CriticalList",
    "LABELS",
    "FILL_KINDS",
    "carrels",
    "classify",
    "critical_list",
    "is_flag_critical",
    "tuple_from_critical",
    "fill_critical",
    "parse_rtuple",
    "parse_critical_list",
    "is_upper",
    "is_flag",
    "is_r_increasing",
    "is_gapless",
    "staircase",
    "entries_leq",
]

LABELS = (
    "upper",
    "flag",
    "r_increasing",
    "gapless",
    "gapless_core",
    "shell",
    "canopy",
    "floor_flag",
    "ceiling_flag",
    "r_flag",
)

FILL_KINDS = ("increasing", "shell", "gapless", "canopy", "floor", "ceiling")
_FLAG_KINDS = frozenset({"gapless", "canopy", "floor", "ceiling"})


@dataclass(frozen=True)
class RSet:
    """A divider set R = {q_1 < ... < q_r} inside [n-1]."""

    n: int
    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"RSet: n must be a positive integer, got {self.n!r}")
        elements = tuple(int(q) for q in self.elements)
        object.__setattr__(self, "elements", elements)
        for a, b in zip(elements, elements[1:]):
            if a >= b:
                raise DomainError(f"RSet: elements must strictly increase, got {list(elements)}")
        for q in elements:
            if not 1 <= q <= self.n - 1:
                raise DomainError(f"RSet: element {q} lies outside [1, {self.n - 1}]")

    @classmethod
    def full(cls, n: int) -> RSet:
        return cls(n, tuple(range(1, n)))

    @classmethod
    def empty(cls, n: int) -> RSet:
        return cls(n, ())

    @classmethod
    def all_subsets(cls, n: int) -> Iterator[RSet]:
        """Every R inside [n-1], by size then lexicographically."""
        for size in range(n):
            for combo in combinations(range(1, n), size):
                yield cls(n, combo)

    @property
    def r(self) -> int:
        return len(self.elements)

    @property
    def q(self) -> tuple[int, ...]:
        """The sentinel-padded sequence q_0 = 0, q_1, ..., q_r, q_{r+1} = n."""
        return (0, *self.elements, self.n)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        q = self.q
        return tuple(q[h] - q[h - 1] for h in range(1, len(q)))

    def carrel_of(self, i: int) -> int:
        """1-based carrel number containing the 1-based position i."""
        for h, (lo, hi) in enumerate(carrels(self), start=1):
            if lo < i <= hi:
                return h
        raise DomainError(f"position {i} lies outside [1, {self.n}]")

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def carrels(rset: RSet) -> tuple[tuple[int, int], ...]:
    """The carrels as half-open pairs (lo, hi) meaning the positions lo+1..hi."""
    q = rset.q
    return tuple((q[h - 1], q[h]) for h in range(1, len(q)))


@dataclass(frozen=True, eq=False)
class RTuple:
    """An n-tuple with entries in [n], equipped with dividers."""

    rset: RSet
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        n = self.rset.n
        if len(entries) != n:
            raise DomainError(f"R-tuple has {len(entries)} entries but n = {n}")
        for i, v in enumerate(entries, start=1):
            if not 1 <= v <= n:
                raise DomainError(f"entry {i} is {v}, outside [1, {n}]")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RTuple):
            return NotImplemented
        return self.rset == other.rset and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rset, self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    @property
    def n(self) -> int:
        return self.rset.n

    def cohorts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.entries[lo:hi] for lo, hi in carrels(self.rset))

    def __le__(self, other: RTuple) -> bool:
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def __str__(self) -> str:
        return ";".join(",".join(map(str, c)) for c in self.cohorts())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


def parse_rtuple(text: str, n: int | None = None, rset: RSet | None = None) -> RTuple:
    """Parse ``2,4,6;1,5,7,8,9;3``; parentheses and whitespace are optional.

    The dividers are read from the semicolons.  If ``rset`` is supplied the
    semicolons must agree with it, unless the text has none, in which case
    ``rset`` is applied.
    """
    body = re.sub(r"\s+", "", text)
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        raise DomainError("empty tuple text")
    try:
        blocks = [[int(v) for v in block.split(",")] for block in body.split(";")]
    except ValueError as exc:
        raise DomainError(f"cannot parse tuple {text!r}: {exc}") from None
    entries = [v for block in blocks for v in block]
    size = len(entries)
    if n is not None and n != size:
        raise DomainError(f"tuple {text!r} has {size} entries but n = {n}")
    cuts: list[int] = []
    total = 0
    for block in blocks[:-1]:
        total += len(block)
        cuts.append(total)
    parsed = RSet(size, tuple(cuts))
    if rset is not None:
        if rset.n != size:
            raise DomainError(f"tuple {text!r} has {size} entries but n = {rset.n}")
        if len(blocks) > 1 and parsed != rset:
            raise DomainError(f"dividers of {text!r} give R = {parsed}, expected R = {rset}")
        parsed = rset
    return RTuple(parsed, tuple(entries))


# Predicates -----------------------------------------------------------------


def is_upper(t: RTuple) -> bool:
    return all(v >= i for i, v in enumerate(t.entries, start=1))


def is_flag(t: RTuple) -> bool:
    e = t.entries
    return all(a <= b for a, b in zip(e, e[1:]))


def is_r_increasing(t: RTuple) -> bool:
    return all(all(a < b for a, b in zip(c, c[1:])) for c in t.cohorts())


def is_gapless(t: RTuple) -> bool:
    """Upper, R-increasing, and every descent at a divider is healed by a staircase."""
    if not (is_upper(t) and is_r_increasing(t)):
        return False
    q = t.rset.q
    e = t.entries
    for h in range(1, t.rset.r + 1):
        left, right = e[q[h] - 1], e[q[h]]
        if left > right:
            s = left - right + 1
            if s > q[h + 1] - q[h]:
                return False
            if e[q[h] : q[h] + s] != tuple(range(left - s + 1, left + 1)):
                return False
    return True


def _is_shell(t: RTuple, c: CriticalList) -> bool:
    critical = c.indices()
    return all(v == t.n for i, v in enumerate(t.entries, start=1) if i not in critical)


def _is_floor_flag(t: RTuple) -> bool:
    # Plateaus are maximal constant runs of the whole tuple; each non-trivial
    # one must start at a divider.
    e = t.entries
    dividers = set(t.rset.elements)
    start = 0
    while start < len(e):
        end = start
        while end + 1 < len(e) and e[end + 1] == e[start]:
            end += 1
        if end > start and (start + 1) not in dividers:
            return False
        start = end + 1
    return True


def _is_ceiling_flag(t: RTuple, c: CriticalList) -> bool:
    # Plateaus are read inside each carrel; their right ends must be exactly
    # the critical indices.
    ends: set[int] = set()
    for lo, hi in carrels(t.rset):
        for i in range(lo, hi):
            if i + 1 == hi or t.entries[i] != t.entries[i + 1]:
                ends.add(i + 1)
    return ends == c.indices()


def _is_r_flag(t: RTuple) -> bool:
    if not (is_upper(t) and is_r_increasing(t)):
        return False
    q = t.rset.q
    e = t.entries
    for h in range(1, t.rset.r + 1):
        p_h, p_next = q[h] - q[h - 1], q[h + 1] - q[h]
        for u in range(1, min(p_h, p_next) + 1):
            if e[q[h + 1] - u] < e[q[h] - u]:
                return False
    return True


def classify(t: RTuple) -> frozenset[str]:
    """All labels from ``LABELS`` that ``t`` satisfies."""
    labels: set[str] = set()
    if is_flag(t):
        labels.add("flag")
    if is_r_increasing(t):
        labels.add("r_increasing")
    if not is_upper(t):
        return frozenset(labels)
    labels.add("upper")
    c = critical_list(t)
    flag_critical = is_flag_critical(c)
    if is_gapless(t):
        labels.add("gapless")
    if is_gapless(fill_critical(c, "increasing")):
        labels.add("gapless_core")
    if _is_shell(t, c):
        labels.add("shell")
        if flag_critical:
            labels.add("canopy")
    if "flag" in labels:
        if _is_floor_flag(t):
            labels.add("floor_flag")
        if _is_ceiling_flag(t, c):
            labels.add("ceiling_flag")
    if _is_r_flag(t):
        labels.add("r_flag")
    return frozenset(labels)


# Critical lists ---------------------------------------------------------------


@dataclass(frozen=True)
class CriticalList:
    """Per carrel, the critical pairs (x, y) listed with x decreasing from q_h."""

    rset: RSet
    carrelsets: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        sets = tuple(tuple((int(x), int(y)) for x, y in pairs) for pairs in self.carrelsets)
        object.__setattr__(self, "carrelsets", sets)
        n = self.rset.n
        bounds = carrels(self.rset)
        if len(sets) != len(bounds):
            raise DomainError(f"critical list has {len(sets)} carrels, expected {len(bounds)}")
        for h, ((lo, hi), pairs) in enumerate(zip(bounds, sets), start=1):
            if not pairs or pairs[0][0] != hi:
                raise DomainError(f"carrel {h}: first critical index must be {hi}")
            for x, y in pairs:
                if not lo < x <= hi:
                    raise DomainError(f"carrel {h}: critical index {x} outside ({lo}, {hi}]")
                if not x <= y <= n:
                    raise DomainError(f"carrel {h}: critical entry {y} at index {x} outside [{x}, {n}]")
            for (x0, y0), (x1, y1) in zip(pairs, pairs[1:]):
                if not x1 < x0:
                    raise DomainError(f"carrel {h}: critical indices must decrease")
                if not y0 - y1 > x0 - x1:
                    raise DomainError(
                        f"carrel {h}: pairs ({x0},{y0}) and ({x1},{y1}) violate the drop condition"
                    )

    def indices(self) -> set[int]:
        return {x for pairs in self.carrelsets for x, _ in pairs}

    def as_dict(self) -> dict[int, int]:
        return {x: y for pairs in self.carrelsets for x, y in pairs}

    def __str__(self) -> str:
        return ";".join(",".join(f"{x}:{y}" for x, y in pairs) for pairs in self.carrelsets)


def parse_critical_list(text: str, rset: RSet) -> CriticalList:
    """Parse ``3:6,2:4,1:2;8:9,7:7;9:9``; pair order within a carrel is free."""
    body = re.sub(r"\s+", "", text)
    try:
        sets = []
        for block in body.split(";"):
            pairs = [tuple(int(v) for v in pair.split(":")) for pair in block.split(",") if pair]
            if any(len(p) != 2 for p in pairs):
                raise ValueError("pairs must look like x:y")
            sets.append(tuple(sorted(pairs, reverse=True)))
    except ValueError as exc:
        raise DomainError(f"cannot parse critical list {text!r}: {exc}") from None
    return CriticalList(rset, tuple(sets))


def critical_list(t: RTuple) -> CriticalList:
    """Critical pairs of an upper tuple, found right to left inside each carrel."""
    if not is_upper(t):
        bad = next(i for i, v in enumerate(t.entries, start=1) if v < i)
        raise DomainError(f"critical_list needs an upper tuple; entry {bad} is {t.entries[bad - 1]} < {bad}")
    e = t.entries
    sets = []
    for lo, hi in carrels(t.rset):
        pairs = [(hi, e[hi - 1])]
        prev = hi
        while True:
            nxt = next(
                (x for x in range(prev - 1, lo, -1) if e[prev - 1] - e[x - 1] > prev - x),
                None,
            )
            if nxt is None:
                break
            pairs.append((nxt, e[nxt - 1]))
            prev = nxt
        sets.append(tuple(pairs))
    return CriticalList(t.rset, tuple(sets))


def is_flag_critical(c: CriticalList) -> bool:
    """Whether the critical entries, read by increasing index, weakly increase."""
    sets = c.carrelsets
    return all(sets[h][0][1] <= sets[h + 1][-1][1] for h in range(len(sets) - 1))


def fill_critical(c: CriticalList, kind: str) -> RTuple:
    """Fill the non-critical positions of ``c`` by the recipe for ``kind``.

    No flag requirement is enforced here; ``tuple_from_critical`` adds it.
    """
    if kind not in FILL_KINDS:
        raise DomainError(f"unknown fill kind {kind!r}; expected one of {', '.join(FILL_KINDS)}")
    n = c.rset.n
    out = [0] * n
    previous_right_end: int | None = None
    for (lo, hi), pairs in zip(carrels(c.rset), c.carrelsets):
        ascending = list(reversed(pairs))
        left = lo
        for k, (x, y) in enumerate(ascending):
            out[x - 1] = y
            leading = k == 0 and previous_right_end is not None
            for i in range(left + 1, x):
                if kind in ("increasing", "gapless"):
                    out[i - 1] = y - (x - i)
                elif kind in ("shell", "canopy"):
                    out[i - 1] = n
                elif kind == "ceiling":
                    out[i - 1] = y
                elif leading:
                    out[i - 1] = max(previous_right_end, y - (x - i))
                else:
                    out[i - 1] = y - (x - i)
            left = x
        previous_right_end = pairs[0][1]
    return RTuple(c.rset, tuple(out))


def tuple_from_critical(c: CriticalList, kind: str) -> RTuple:
    """The canonical tuple of the given kind whose critical list is ``c``."""
    if kind in _FLAG_KINDS and not is_flag_critical(c):
        raise DomainError(f"kind {kind!r} needs a flag critical list; {c} is not one")
    return fill_critical(c, kind)


def staircase(rset: RSet) -> RTuple:
    return RTuple(rset, tuple(range(1, rset.n + 1)))


def entries_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))
