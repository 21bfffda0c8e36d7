"""Family generators, parabolic Catalan counts and the sweep verifier."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Callable, Iterator

from .errors import DomainError, InternalError
from .maps import (
    RPermutation,
    ceiling_of,
    chain_of,
    core,
    floor_of,
    is_r312_avoiding,
    is_rightmost_clump_deleting,
    pi_of,
    rank_tuple,
    shell_of,
)
from .polynomials import (
    SparsePoly,
    gv_determinant,
    is_nonpermutable,
    key_poly_dd,
    perm_dot_shape,
    tableau_sum,
)
from .rtuples import (
    CriticalList,
    RSet,
    RTuple,
    carrels,
    classify,
    is_flag_critical,
    tuple_from_critical,
)
from .scanning import convexity_witness, scan, scan_via_remainders
from .tableaux import (
    Partition,
    Tableau,
    enumerate_tableaux,
    is_gapless_key,
    is_key,
    key_of,
    leq,
    minimal_shape,
    partitions_in_box,
    perm_of_key,
    principal_ideal,
    r_of_shape,
    row_end_list,
    row_end_max,
)

__all__ = [
    "KINDS",
    "THEOREMS",
    "Limits",
    "VerificationReport",
    "generate",
    "multinomial",
    "parabolic_catalan",
    "total_parabolic_catalan",
    "class_interval",
    "verify",
    "ShapeData",
    "shape_data",
]

KINDS = (
    "U",
    "UI",
    "UF",
    "UG",
    "UGC",
    "UFlr",
    "UCeil",
    "shells",
    "canopies",
    "critical_lists",
    "flag_critical_lists",
    "r_permutations",
    "r312_avoiding",
    "chains",
    "rightmost_clump_deleting_chains",
)


def multinomial(rset: RSet) -> int:
    out = factorial(rset.n)
    for p in rset.block_sizes:
        out //= factorial(p)
    return out


# Generators -----------------------------------------------------------------------


def _upper_tuples(rset: RSet) -> Iterator[RTuple]:
    n = rset.n
    for entries in product(*(range(i, n + 1) for i in range(1, n + 1))):
        yield RTuple(rset, entries)


def _increasing_tuples(rset: RSet) -> Iterator[RTuple]:
    # Each carrel (lo, hi] takes any increasing choice from lo+1..n; upperness
    # follows because the smallest value is already at least lo+1.
    n = rset.n
    blocks = [combinations(range(lo + 1, n + 1), hi - lo) for lo, hi in carrels(rset)]
    for choice in product(*(list(b) for b in blocks)):
        yield RTuple(rset, tuple(v for block in choice for v in block))


def _upper_flags(rset: RSet) -> Iterator[RTuple]:
    n = rset.n

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        i = len(prefix) + 1
        if i > n:
            yield tuple(prefix)
            return
        low = max(i, prefix[-1] if prefix else 1)
        for v in range(low, n + 1):
            yield from rec(prefix + [v])

    for entries in rec([]):
        yield RTuple(rset, entries)


def _carrel_pair_lists(lo: int, hi: int, n: int) -> list[tuple[tuple[int, int], ...]]:
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(pairs: list[tuple[int, int]]) -> None:
        out.append(tuple(pairs))
        x0, y0 = pairs[-1]
        for x in range(x0 - 1, lo, -1):
            # Need x <= y and y0 - y > x0 - x.
            for y in range(x, y0 - (x0 - x)):
                rec(pairs + [(x, y)])

    for y in range(hi, n + 1):
        rec([(hi, y)])
    return out


def _critical_lists(rset: RSet) -> Iterator[CriticalList]:
    options = [_carrel_pair_lists(lo, hi, rset.n) for lo, hi in carrels(rset)]
    for choice in product(*options):
        yield CriticalList(rset, choice)


def _r_permutations(rset: RSet) -> Iterator[RPermutation]:
    sizes = rset.block_sizes

    def rec(h: int, remaining: tuple[int, ...], prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if h == len(sizes):
            yield prefix
            return
        for block in combinations(remaining, sizes[h]):
            rest = tuple(v for v in remaining if v not in block)
            yield from rec(h + 1, rest, prefix + block)

    for entries in rec(0, tuple(range(1, rset.n + 1)), ()):
        yield RPermutation(rset, entries)


def generate(kind: str, n: int, rset: RSet | None = None) -> Iterator:
    """Every object of the family once, in a fixed order.

    Tuple families built from critical lists follow the order of the critical
    list generator; the others are lexicographic on entries.
    """
    rset = RSet.empty(n) if rset is None else rset
    if rset.n != n:
        raise DomainError(f"R = {rset} belongs to n = {rset.n}, not {n}")
    if kind == "U":
        return _upper_tuples(rset)
    if kind == "UI":
        return _increasing_tuples(rset)
    if kind == "UF":
        return _upper_flags(rset)
    if kind == "UGC":
        return (t for t in _upper_tuples(rset) if "gapless_core" in classify(t))
    if kind == "critical_lists":
        return _critical_lists(rset)
    if kind == "flag_critical_lists":
        return (c for c in _critical_lists(rset) if is_flag_critical(c))
    fills = {"UG": "gapless", "UFlr": "floor", "UCeil": "ceiling", "canopies": "canopy"}
    if kind in fills:
        return (tuple_from_critical(c, fills[kind]) for c in generate("flag_critical_lists", n, rset))
    if kind == "shells":
        return (tuple_from_critical(c, "shell") for c in _critical_lists(rset))
    if kind == "r_permutations":
        return _r_permutations(rset)
    if kind == "r312_avoiding":
        return (p for p in _r_permutations(rset) if is_r312_avoiding(p))
    if kind == "chains":
        return (chain_of(p) for p in _r_permutations(rset))
    if kind == "rightmost_clump_deleting_chains":
        return (b for b in generate("chains", n, rset) if is_rightmost_clump_deleting(b))
    raise DomainError(f"unknown family {kind!r}; expected one of {', '.join(KINDS)}")


def _count(kind: str, rset: RSet) -> int:
    return sum(1 for _ in generate(kind, rset.n, rset))


def parabolic_catalan(n: int, rset: RSet | None = None, cross_check: bool = False) -> int:
    """Number of R-312-avoiding R-permutations."""
    rset = RSet.empty(n) if rset is None else rset
    value = _count("r312_avoiding", rset)
    if cross_check:
        for kind in ("UG", "UFlr", "UCeil"):
            other = _count(kind, rset)
            if other != value:
                raise InternalError(f"C_{n}^{rset}: {value} avoiding permutations but {other} {kind} tuples")
    return value


def total_parabolic_catalan(n: int, method: str = "permutations") -> int:
    """Sum of C_n^R over every R; ``method`` is "permutations" or "gapless"."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if method == "permutations":
        return sum(parabolic_catalan(n, rset) for rset in RSet.all_subsets(n))
    if method == "gapless":
        return sum(_count("UG", rset) for rset in RSet.all_subsets(n))
    raise DomainError(f"unknown counting method {method!r}")


def class_interval(beta: RTuple) -> tuple[RTuple, RTuple]:
    """Least and greatest tuples sharing the critical list of beta."""
    return core(beta), shell_of(beta)


# Per-shape caches ------------------------------------------------------------------


@dataclass
class ShapeData:
    """Everything the sweeps need about one shape, computed once."""

    shape: Partition
    rset: RSet
    tableaux: list[Tableau]
    scans: dict[Tableau, Tableau]
    row_ends: dict[Tableau, tuple[int, ...]]
    perms: list[RPermutation]
    keys: dict[RPermutation, Tableau]

    def bound_set(self, beta: RTuple) -> frozenset[Tableau]:
        """S(beta) for upper beta: a tableau fits iff its row ends fit."""
        e = beta.entries
        return frozenset(t for t, w in self.row_ends.items() if all(a <= b for a, b in zip(w, e)))

    def demazure(self, p: RPermutation) -> frozenset[Tableau]:
        key = self.keys[p]
        return frozenset(t for t in self.tableaux if leq(self.scans[t], key))

    def poly(self, ts: frozenset[Tableau]) -> SparsePoly:
        return tableau_sum(ts, self.shape.n)


@lru_cache(maxsize=64)
def shape_data(shape: Partition) -> ShapeData:
    rset = r_of_shape(shape)
    tableaux = list(enumerate_tableaux(shape))
    perms = list(generate("r_permutations", shape.n, rset))
    return ShapeData(
        shape=shape,
        rset=rset,
        tableaux=tableaux,
        scans={t: scan(t) for t in tableaux},
        row_ends={t: row_end_list(t).entries for t in tableaux},
        perms=perms,
        keys={p: key_of(shape, p) for p in perms},
    )


# Verification harness -------------------------------------------------------------


@dataclass(frozen=True)
class Limits:
    """Sweep bounds: shapes have at most ``rows`` nonzero parts of size at most ``cols``."""

    max_n: int = 4
    rows: int = 3
    cols: int = 3
    min_n: int = 1

    def shapes(self) -> Iterator[Partition]:
        for n in range(self.min_n, self.max_n + 1):
            yield from partitions_in_box(n, self.rows, self.cols)

    def as_dict(self) -> dict:
        return {"min_n": self.min_n, "max_n": self.max_n, "box": f"{self.rows}x{self.cols}"}


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)
    ms: int = 0
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "params": self.params,
            "checked": self.checked,
            "failures": self.failures,
            "ms": self.ms,
        }
        if self.info:
            out["info"] = self.info
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> VerificationReport:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["theorem"], data["params"], data["checked"], list(data["failures"]), data["ms"], data.get("info", {})
        )


class _Tally:
    def __init__(self) -> None:
        self.checked = 0
        self.failures: list[dict] = []
        self.info: dict = {}

    def check(self, ok: bool, **details) -> None:
        self.checked += 1
        if not ok:
            self.failures.append({k: str(v) for k, v in details.items()})

    def merge(self, other: _Tally) -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)
        for k, v in other.info.items():
            self.info[k] = v


def _shape_label(shape: Partition) -> str:
    return f"({shape})"


def _check_t340(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    for p, key in data.keys.items():
        avoiding = is_r312_avoiding(p)
        tally.check(is_key(key) and perm_of_key(key) == p, shape=lab, perm=p, claim="key round trip")
        tally.check(row_end_list(key) == rank_tuple(p), shape=lab, perm=p, claim="row ends of key are rank tuple")
        tally.check(is_gapless_key(key) == avoiding, shape=lab, perm=p, claim="gapless key iff avoiding")
        if avoiding:
            tally.check(
                row_end_max(shape, rank_tuple(p)) == key, shape=lab, perm=p, claim="row end max of rank tuple is key"
            )
    # Row end max against the brute-force maximum of each fiber.
    fibers: dict[tuple[int, ...], list[Tableau]] = {}
    for t, w in data.row_ends.items():
        fibers.setdefault(w, []).append(t)
    for alpha in generate("UI", shape.n, data.rset):
        members = fibers.get(alpha.entries, [])
        m = row_end_max(shape, alpha)
        best = all(leq(t, m) for t in members) and m in members
        tally.check(best, shape=lab, tuple=alpha, claim="row end max is the fiber maximum")
        if "gapless" in classify(alpha):
            tally.check(is_key(m), shape=lab, tuple=alpha, claim="row end max of gapless tuple is a key")
    return tally


def _check_t420(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    key_set = set(data.keys.values())
    for t, s in data.scans.items():
        tally.check(s == scan_via_remainders(t), shape=lab, tableau=t, claim="scan agrees with remainder formula")
        tally.check(s in key_set and leq(t, s), shape=lab, tableau=t, claim="scan is a key above T")
    for key in key_set:
        tally.check(data.scans[key] == key, shape=lab, tableau=key, claim="scan fixes keys")
    fibers = {key: 0 for key in key_set}
    for s in data.scans.values():
        fibers[s] += 1
    tally.check(sum(fibers.values()) == len(data.tableaux), shape=lab, claim="scan fibers partition the tableaux")
    seen: dict[frozenset, RPermutation] = {}
    for p, key in data.keys.items():
        d = data.demazure(p)
        tally.check(key in d and all(leq(t, key) for t in d), shape=lab, perm=p, claim="key is the top of D")
        tally.check(d not in seen, shape=lab, perm=p, claim="Demazure sets are distinct")
        seen[d] = p
        if is_r312_avoiding(p):
            tally.check(d == frozenset(principal_ideal(key)), shape=lab, perm=p, claim="D is the ideal below the key")
    return tally


def _check_t520(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    for p, key in data.keys.items():
        if is_r312_avoiding(p):
            continue
        d = data.demazure(p)
        ideal = frozenset(principal_ideal(key))
        tally.check(d < ideal, shape=lab, perm=p, claim="D is a proper subset of the ideal")
        w = convexity_witness(shape, p)
        ok = w.lower in d and w.upper in d and w.middle in ideal and w.middle not in d
        tally.check(ok, shape=lab, perm=p, claim="segment witness breaks convexity")
    return tally


def _check_t721(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    n, rset = shape.n, data.rset
    for g in generate("UG", n, rset):
        s_g = data.bound_set(g)
        tally.check(data.bound_set(floor_of(g)) == s_g, shape=lab, tuple=g, claim="S(floor) = S(gapless)")
        tally.check(data.bound_set(ceiling_of(g)) == s_g, shape=lab, tuple=g, claim="S(ceiling) = S(gapless)")
        tally.check(data.demazure(pi_of(g)) == s_g, shape=lab, tuple=g, claim="D(Pi(gamma)) = S(gamma)")
    flag_sets = {data.bound_set(f) for f in generate("UF", n, rset)}
    avoid_sets = {data.demazure(p) for p in data.perms if is_r312_avoiding(p)}
    tally.check(flag_sets == avoid_sets, shape=lab, claim="flag bound sets = avoiding Demazure sets")
    demazure_of = {}
    for p in data.perms:
        demazure_of.setdefault(data.demazure(p), []).append(p)
    for beta in generate("U", n, rset):
        for p in demazure_of.get(data.bound_set(beta), []):
            ok = core(beta) == rank_tuple(p) and is_r312_avoiding(p) and "gapless_core" in classify(beta)
            tally.check(ok, shape=lab, tuple=beta, perm=p, claim="set coincidence forces core = rank tuple")
    return tally


def _check_t737_1(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    n, rset = shape.n, data.rset
    for p in data.perms:
        if is_r312_avoiding(p):
            d = data.poly(data.demazure(p))
            s = data.poly(data.bound_set(rank_tuple(p)))
            tally.check(d == s, shape=lab, perm=p, claim="d(pi) = s(rank tuple)")
    for eta in generate("UGC", n, rset):
        s = data.bound_set(eta)
        tally.check(s == data.demazure(pi_of(core(eta))), shape=lab, tuple=eta, claim="S(eta) = D(Pi(core eta))")
    return tally


def _check_table16(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    n, rset = shape.n, data.rset
    big, cat = multinomial(rset), parabolic_catalan(n, rset)

    def distinct(tuples, fn) -> tuple[int, int]:
        sets = [fn(x) for x in tuples]
        return len(set(sets)), len({data.poly(s) for s in sets})

    all_sets, all_polys = distinct(list(generate("U", n, rset)), data.bound_set)
    tally.check(all_sets == big, shape=lab, claim="row 2 identical count", got=all_sets, want=big)
    for row, kind in (("3", "UGC"), ("4", "UFlr")):
        sets, polys = distinct(list(generate(kind, n, rset)), data.bound_set)
        tally.check(sets == cat and polys == cat, shape=lab, claim=f"row {row} counts", got=(sets, polys), want=cat)
    avoiding = [p for p in data.perms if is_r312_avoiding(p)]
    sets, polys = distinct(avoiding, data.demazure)
    tally.check(sets == cat and polys == cat, shape=lab, claim="row 6 counts", got=(sets, polys), want=cat)
    sets, polys = distinct(data.perms, data.demazure)
    tally.check(sets == big and polys == big, shape=lab, claim="row 7 counts", got=(sets, polys), want=big)
    d_sets = {data.demazure(p) for p in data.perms}
    bound_sets = {data.bound_set(b) for b in generate("U", n, rset)}
    coincident = d_sets & bound_sets
    d_polys = {data.poly(s) for s in d_sets}
    coincident_polys = {data.poly(s) for s in bound_sets} & d_polys
    tally.check(
        len(coincident) == cat and len(coincident_polys) == cat,
        shape=lab,
        claim="row 5 counts",
        got=(len(coincident), len(coincident_polys)),
        want=cat,
    )
    tally.info[lab] = {"row2_distinct_polynomials": all_polys, "multinomial": big}
    return tally


def _check_gv17(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    witnesses = 0
    for beta in generate("U", shape.n, data.rset):
        equal = gv_determinant(shape, beta) == data.poly(data.bound_set(beta))
        nonperm = is_nonpermutable(shape, beta)
        witnesses += not nonperm and not equal
        tally.check(equal == nonperm, shape=lab, tuple=beta, claim="determinant = row bound sum iff nonpermutable")
    tally.info[lab] = {"failing_witnesses": witnesses}
    return tally


def _check_dd(shape: Partition) -> _Tally:
    tally = _Tally()
    data = shape_data(shape)
    lab = _shape_label(shape)
    for p in data.perms:
        d = data.poly(data.demazure(p))
        tally.check(d == key_poly_dd(perm_dot_shape(p, shape)), shape=lab, perm=p, claim="d(pi) = key polynomial")
    return tally


_PER_SHAPE: dict[str, Callable[[Partition], _Tally]] = {
    "T340": _check_t340,
    "T420": _check_t420,
    "T520": _check_t520,
    "T721": _check_t721,
    "T737_1": _check_t737_1,
    "TABLE16_1": _check_table16,
    "GV17": _check_gv17,
    "KEYDD": _check_dd,
}


def _check_t737_2(limits: Limits) -> _Tally:
    """Polynomial coincidences across every pair of shapes with the same n."""
    tally = _Tally()
    for n in range(limits.min_n, limits.max_n + 1):
        row_sums: dict[SparsePoly, list[tuple[Partition, RTuple]]] = {}
        for shape in partitions_in_box(n, limits.rows, limits.cols):
            data = shape_data(shape)
            for beta in generate("U", n, data.rset):
                row_sums.setdefault(data.poly(data.bound_set(beta)), []).append((shape, beta))
        for shape in partitions_in_box(n, limits.rows, limits.cols):
            data = shape_data(shape)
            for p in data.perms:
                d = data.poly(data.demazure(p))
                for other, beta in row_sums.get(d, []):
                    ok = other == shape and core(beta) == rank_tuple(p) and is_r312_avoiding(p)
                    tally.check(ok, shape=_shape_label(shape), perm=p, bound_shape=_shape_label(other), tuple=beta)
    return tally


def _check_t18_1(limits: Limits) -> _Tally:
    tally = _Tally()
    for n in range(limits.min_n, limits.max_n + 1):
        for rset in RSet.all_subsets(n):
            cat = parabolic_catalan(n, rset)
            counts = {
                kind: _count(kind, rset)
                for kind in (
                    "UG",
                    "canopies",
                    "UFlr",
                    "UCeil",
                    "flag_critical_lists",
                    "rightmost_clump_deleting_chains",
                )
            }
            shape = minimal_shape(rset)
            data = shape_data(shape)
            counts["gapless_keys"] = sum(1 for key in data.keys.values() if is_gapless_key(key))
            counts["avoiding_demazure_sets"] = len(
                {data.demazure(p) for p in data.perms if is_r312_avoiding(p)}
            )
            counts["flag_bound_sets"] = len({data.bound_set(f) for f in generate("UF", n, rset)})
            for kind, value in counts.items():
                tally.check(value == cat, n=n, R=rset, family=kind, got=value, want=cat)
    return tally


THEOREMS = ("T340", "T420", "T520", "T721", "T737_1", "T737_2", "T18_1", "TABLE16_1", "GV17", "KEYDD")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PARCAT_THREADS", "1")))
    except ValueError:
        return 1


def verify(theorem: str, limits: Limits | None = None, workers: int | None = None) -> VerificationReport:
    """Sweep every instance within ``limits`` and collect counterexamples.

    Per-shape sweeps may run on ``workers`` threads (default from the
    PARCAT_THREADS environment variable); results are merged in shape order,
    so the report does not depend on the thread count apart from ``ms``.
    """
    if theorem not in THEOREMS:
        raise DomainError(f"unknown theorem id {theorem!r}; expected one of {', '.join(THEOREMS)}")
    limits = limits or Limits()
    start = time.perf_counter()
    tally = _Tally()
    if theorem == "T18_1":
        tally = _check_t18_1(limits)
    elif theorem == "T737_2":
        tally = _check_t737_2(limits)
    else:
        check = _PER_SHAPE[theorem]
        shapes = list(limits.shapes())
        count = workers if workers is not None else _threads()
        if count > 1:
            with ThreadPoolExecutor(max_workers=count) as pool:
                results = list(pool.map(check, shapes))
        else:
            results = [check(shape) for shape in shapes]
        for result in results:
            tally.merge(result)
    ms = int((time.perf_counter() - start) * 1000)
    return VerificationReport(theorem, limits.as_dict(), tally.checked, tally.failures, ms, tally.info)
