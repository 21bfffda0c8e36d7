"""Maps between R-tuples and R-permutations, chains, projections and lifts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, InternalError
from .rtuples import (
    RSet,
    RTuple,
    carrels,
    critical_list,
    fill_critical,
    is_gapless,
    is_r_increasing,
    is_upper,
    tuple_from_critical,
)

__all__ = [
    "RPermutation",
    "Chain",
    "core",
    "floor_of",
    "ceiling_of",
    "platform",
    "shell_of",
    "rank_tuple",
    "pi_of",
    "is_r312_avoiding",
    "is_r312_avoiding_by_pattern",
    "is_r312_avoiding_by_intervals",
    "chain_of",
    "perm_of_chain",
    "is_rightmost_clump_deleting",
    "is_rightmost_clump_deleting_by_clumps",
    "r_projection",
    "min_lift",
    "coxeter_length",
    "is_312_avoiding",
    "permutation",
]


class RPermutation(RTuple):
    """A permutation of [n] that increases inside every carrel."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if sorted(self.entries) != list(range(1, self.n + 1)):
            raise DomainError(f"{self} is not a permutation of [1, {self.n}]")
        if not is_r_increasing(self):
            h = next(
                h
                for h, c in enumerate(self.cohorts(), start=1)
                if any(a > b for a, b in zip(c, c[1:]))
            )
            raise DomainError(f"{self} is not increasing inside carrel {h}")

    @classmethod
    def identity(cls, rset: RSet) -> RPermutation:
        return cls(rset, tuple(range(1, rset.n + 1)))

    def __str__(self) -> str:
        # Classical permutations carry every divider, so the semicolons add nothing.
        if self.rset.r == self.n - 1:
            return ",".join(map(str, self.entries))
        return super().__str__()


def permutation(entries: Sequence[int]) -> RPermutation:
    """A classical permutation, i.e. one with every divider present."""
    return RPermutation(RSet.full(len(entries)), tuple(entries))


def _as_rpermutation(p: RTuple) -> RPermutation:
    return p if isinstance(p, RPermutation) else RPermutation(p.rset, p.entries)


@dataclass(frozen=True)
class Chain:
    """Nested sets B_0 = {} < B_1 < ... < B_{r+1} = [n] with |B_h| = q_h."""

    rset: RSet
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        sets = tuple(frozenset(b) for b in self.sets)
        object.__setattr__(self, "sets", sets)
        q = self.rset.q
        if len(sets) != len(q):
            raise DomainError(f"chain needs {len(q)} sets B_0..B_{len(q) - 1}, got {len(sets)}")
        if sets[-1] != frozenset(range(1, self.rset.n + 1)):
            raise DomainError(f"last chain set must be [1, {self.rset.n}]")
        for h, (b, size) in enumerate(zip(sets, q)):
            if len(b) != size:
                raise DomainError(f"chain set B_{h} has {len(b)} elements, expected {size}")
        for h in range(1, len(sets)):
            if not sets[h - 1] < sets[h]:
                raise DomainError(f"chain set B_{h - 1} is not strictly inside B_{h}")

    def __str__(self) -> str:
        return " < ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.sets)


# Tuple maps -----------------------------------------------------------------


def _require_upper(t: RTuple, name: str) -> None:
    if not is_upper(t):
        bad = next(i for i, v in enumerate(t.entries, start=1) if v < i)
        raise DomainError(f"{name} needs an upper tuple; entry {bad} is {t.entries[bad - 1]} < {bad}")


def _require_gapless(t: RTuple, name: str) -> None:
    if not is_gapless(t):
        raise DomainError(f"{name} needs a gapless tuple; {t} is not gapless")


def core(t: RTuple) -> RTuple:
    """Smallest-looking R-increasing representative: staircases below each critical pair."""
    _require_upper(t, "core")
    return fill_critical(critical_list(t), "increasing")


def shell_of(t: RTuple) -> RTuple:
    """Largest tuple sharing the critical list of ``t``: non-critical entries become n."""
    _require_upper(t, "shell_of")
    return fill_critical(critical_list(t), "shell")


def floor_of(g: RTuple) -> RTuple:
    _require_gapless(g, "floor_of")
    return tuple_from_critical(critical_list(g), "floor")


def ceiling_of(g: RTuple) -> RTuple:
    _require_gapless(g, "ceiling_of")
    return tuple_from_critical(critical_list(g), "ceiling")


def platform(t: RTuple) -> RTuple:
    """Ceiling-style fill of the critical list of any upper tuple."""
    _require_upper(t, "platform")
    return fill_critical(critical_list(t), "ceiling")


def rank_tuple(p: RTuple) -> RTuple:
    """Per carrel h, the q_h - q_{h-1} largest elements of B_h in ascending order."""
    p = _as_rpermutation(p)
    out: list[int] = []
    for lo, hi in carrels(p.rset):
        prefix = sorted(p.entries[:hi])
        out.extend(prefix[lo:])
    return RTuple(p.rset, tuple(out))


def pi_of(g: RTuple) -> RPermutation:
    """Inverse of ``rank_tuple`` on gapless tuples.

    A boundary with equal entries is treated like a descent of size one, which
    is what keeps the output a permutation.
    """
    _require_gapless(g, "pi_of")
    e = g.entries
    q = g.rset.q
    pi = list(e[: q[1]])
    for h in range(1, g.rset.r + 1):
        left, right = e[q[h] - 1], e[q[h]]
        s = left - right + 1 if left >= right else 0
        used = set(pi)
        available = sorted((v for v in range(1, left + 1) if v not in used), reverse=True)
        if len(available) < s:
            raise InternalError(f"pi_of: too few values below {left} at divider {q[h]}")
        # Position q_h + s - d + 1 receives the d-th largest available value.
        pi.extend(available[d - 1] for d in range(s, 0, -1))
        pi.extend(e[q[h] + s : q[h + 1]])
    return RPermutation(g.rset, tuple(pi))


# Pattern avoidance ------------------------------------------------------------


def is_r312_avoiding_by_pattern(p: RTuple) -> bool:
    """Search for a > c > b values at positions in three increasing carrels."""
    e = p.entries
    q = p.rset.q
    r = p.rset.r
    for h in range(1, r):
        for b in range(q[h], q[h + 1]):
            for a in range(q[h]):
                if e[a] <= e[b]:
                    continue
                if any(e[b] < e[c] < e[a] for c in range(q[h + 1], p.n)):
                    return False
    return True


def is_r312_avoiding_by_intervals(p: RTuple) -> bool:
    """Each gap (min of next cohort, max of prefix) must be filled by the next prefix."""
    e = p.entries
    q = p.rset.q
    for h in range(1, p.rset.r + 1):
        low = min(e[q[h] : q[h + 1]])
        high = max(e[: q[h]])
        prefix = set(e[: q[h + 1]])
        if any(v not in prefix for v in range(low + 1, high)):
            return False
    return True


def is_r312_avoiding(p: RTuple) -> bool:
    p = _as_rpermutation(p)
    by_pattern = is_r312_avoiding_by_pattern(p)
    if by_pattern != is_r312_avoiding_by_intervals(p):
        raise InternalError(f"312-avoidance tests disagree on {p}")
    return by_pattern


def is_312_avoiding(s: Sequence[int]) -> bool:
    """Classical avoidance: no i < j < k with s_j < s_k < s_i."""
    seq = s.entries if isinstance(s, RTuple) else tuple(s)
    m = len(seq)
    for j in range(m):
        for i in range(j):
            if seq[i] <= seq[j]:
                continue
            if any(seq[j] < seq[k] < seq[i] for k in range(j + 1, m)):
                return False
    return True


# Chains -----------------------------------------------------------------------


def chain_of(p: RTuple) -> Chain:
    p = _as_rpermutation(p)
    return Chain(p.rset, tuple(frozenset(p.entries[:q]) for q in p.rset.q))


def perm_of_chain(b: Chain) -> RPermutation:
    out: list[int] = []
    for h in range(1, len(b.sets)):
        out.extend(sorted(b.sets[h] - b.sets[h - 1]))
    return RPermutation(b.rset, tuple(out))


def is_rightmost_clump_deleting(b: Chain) -> bool:
    """For each h, [min(B_{h+1} minus B_h), max B_h] lies inside B_{h+1}."""
    sets = b.sets
    for h in range(1, len(sets) - 1):
        low = min(sets[h + 1] - sets[h])
        high = max(sets[h])
        if any(v not in sets[h + 1] for v in range(low, high + 1)):
            return False
    return True


def _clumps(values: frozenset[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for v in sorted(values):
        if runs and runs[-1][-1] == v - 1:
            runs[-1].append(v)
        else:
            runs.append([v])
    return runs


def is_rightmost_clump_deleting_by_clumps(b: Chain) -> bool:
    """Clump formulation: with B_{h+1} split into clumps L_1..L_f, the new
    elements B_{h+1} minus B_h must lie in L_e..L_f and contain L_{e+1}..L_f
    for some e."""
    sets = b.sets
    for h in range(1, len(sets) - 1):
        new = sets[h + 1] - sets[h]
        runs = _clumps(sets[h + 1])
        if not any(
            {v for run in runs[e + 1 :] for v in run} <= new <= {v for run in runs[e:] for v in run}
            for e in range(len(runs))
        ):
            return False
    return True


# Projections and lifts ----------------------------------------------------------


def _entries_of(s: RTuple | Sequence[int]) -> tuple[int, ...]:
    seq = s.entries if isinstance(s, RTuple) else tuple(s)
    if sorted(seq) != list(range(1, len(seq) + 1)):
        raise DomainError(f"{list(seq)} is not a permutation of [1, {len(seq)}]")
    return seq


def r_projection(s: RTuple | Sequence[int], rset: RSet) -> RPermutation:
    seq = _entries_of(s)
    if len(seq) != rset.n:
        raise DomainError(f"permutation has {len(seq)} entries but n = {rset.n}")
    out: list[int] = []
    for lo, hi in carrels(rset):
        out.extend(sorted(seq[lo:hi]))
    return RPermutation(rset, tuple(out))


def min_lift(p: RTuple) -> RPermutation:
    """The shortest 312-avoiding permutation whose projection is ``p``."""
    p = _as_rpermutation(p)
    if not is_r312_avoiding(p):
        raise DomainError(f"min_lift needs an R-312-avoiding permutation; {p} contains the pattern")
    q = p.rset.q
    e = p.entries
    out = list(e[: q[1]])
    for h in range(1, p.rset.r + 1):
        m = max(e[: q[h]])
        cohort = e[q[h] : q[h + 1]]
        below = sorted((v for v in cohort if v < m), reverse=True)
        above = sorted(v for v in cohort if v > m)
        out.extend(below + above)
    return permutation(out)


def coxeter_length(s: RTuple | Sequence[int]) -> int:
    seq = _entries_of(s)
    return sum(1 for j in range(len(seq)) for i in range(j) if seq[i] > seq[j])
