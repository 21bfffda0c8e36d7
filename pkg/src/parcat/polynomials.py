"""Exact polynomials in x_1..x_n and the tableau generating functions built on them."""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InternalError
from .maps import platform
from .rtuples import RTuple, classify, entries_leq, is_upper
from .scanning import demazure_set
from .tableaux import Partition, Tableau, content, enumerate_tableaux, r_of_shape

__all__ = [
    "SparsePoly",
    "tableau_sum",
    "row_bound_sum",
    "demazure_poly",
    "perm_dot_shape",
    "isobaric_divided_difference",
    "key_poly_dd",
    "flagged_h",
    "gv_matrix",
    "gv_determinant",
    "is_nonpermutable",
    "identical_as_generating_functions",
]

Exponent = tuple[int, ...]


class SparsePoly:
    """An integer polynomial stored as a map from exponent vectors to coefficients.

    Coefficients are Python integers, so arithmetic never overflows.
    """

    __slots__ = ("n", "_terms", "_key")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | None = None):
        if n < 0:
            raise DomainError(f"variable count must be nonnegative, got {n}")
        self.n = n
        clean: dict[Exponent, int] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise DomainError(f"bad exponent {exp} for {n} variables")
            if coeff:
                clean[exp] = clean.get(exp, 0) + int(coeff)
        self._terms = {e: c for e, c in clean.items() if c}
        self._key: tuple | None = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Exponent, int]) -> SparsePoly:
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._key = None
        return obj

    @classmethod
    def zero(cls, n: int) -> SparsePoly:
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> SparsePoly:
        return cls._raw(n, {(0,) * n: 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> SparsePoly:
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, n: int, i: int) -> SparsePoly:
        """x_i for 1-based i."""
        if not 1 <= i <= n:
            raise DomainError(f"variable x{i} does not exist among x1..x{n}")
        exp = [0] * n
        exp[i - 1] = 1
        return cls._raw(n, {tuple(exp): 1})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms in descending lexicographic order of exponents."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def coefficient_sum(self) -> int:
        return sum(self._terms.values())

    def _check(self, other: SparsePoly) -> None:
        if self.n != other.n:
            raise DomainError(f"variable counts differ: {self.n} and {other.n}")

    def _lift(self, other: SparsePoly | int) -> SparsePoly:
        if isinstance(other, int):
            return SparsePoly._raw(self.n, {(0,) * self.n: other} if other else {})
        self._check(other)
        return other

    def __add__(self, other: SparsePoly | int) -> SparsePoly:
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.n, out)

    def __neg__(self) -> SparsePoly:
        return SparsePoly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: SparsePoly | int) -> SparsePoly:
        return self + (-self._lift(other))

    __radd__ = __add__

    def __rsub__(self, other: int) -> SparsePoly:
        return -self + other

    def __mul__(self, other: SparsePoly | int) -> SparsePoly:
        if isinstance(other, int):
            return SparsePoly._raw(self.n, {e: c * other for e, c in self._terms.items()} if other else {})
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return SparsePoly._raw(self.n, out)

    __rmul__ = __mul__

    def swap(self, i: int, j: int) -> SparsePoly:
        """Exchange the 1-based variables x_i and x_j."""
        out = {}
        for e, c in self._terms.items():
            lst = list(e)
            lst[i - 1], lst[j - 1] = lst[j - 1], lst[i - 1]
            out[tuple(lst)] = c
        return SparsePoly._raw(self.n, out)

    def divide_by_difference(self, i: int, j: int) -> SparsePoly:
        """Exact quotient by x_i - x_j, computed by synthetic division in x_i."""
        # Group by the exponents of the other variables; inside a group the
        # coefficient of x_i^p is a polynomial in x_j, kept as {power: coeff}.
        groups: dict[Exponent, dict[int, dict[int, int]]] = {}
        for e, c in self._terms.items():
            rest = list(e)
            rest[i - 1] = rest[j - 1] = 0
            slot = groups.setdefault(tuple(rest), {}).setdefault(e[i - 1], {})
            slot[e[j - 1]] = c
        out: dict[Exponent, int] = {}
        for rest, by_power in groups.items():
            carry: dict[int, int] = {}
            for power in range(max(by_power), 0, -1):
                coeff = dict(carry)
                for k, v in by_power.get(power, {}).items():
                    coeff[k] = coeff.get(k, 0) + v
                for k, v in coeff.items():
                    if v:
                        exp = list(rest)
                        exp[i - 1] = power - 1
                        exp[j - 1] = k
                        out[tuple(exp)] = v
                carry = {k + 1: v for k, v in coeff.items() if v}
            for k, v in by_power.get(0, {}).items():
                carry[k] = carry.get(k, 0) + v
            if any(carry.values()):
                raise InternalError(f"division by x{i} - x{j} is not exact")
        return SparsePoly._raw(self.n, out)

    def _canonical(self) -> tuple:
        if self._key is None:
            self._key = (self.n, tuple(self.items()))
        return self._key

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == SparsePoly.one(self.n) * other
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.items()):
            factors = [f"x{i}" if p == 1 else f"x{i}^{p}" for i, p in enumerate(e, start=1) if p]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag), *factors])
            if k == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SparsePoly({self.n}, {str(self)!r})"

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"exp": list(e), "coeff": c} for e, c in self.items()]}

    @classmethod
    def from_json(cls, data: dict | str) -> SparsePoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], {tuple(t["exp"]): t["coeff"] for t in data["terms"]})


# Tableau sums -----------------------------------------------------------------


def tableau_sum(ts: Iterable[Tableau], n: int | None = None) -> SparsePoly:
    """Sum of x^content over the tableaux; ``n`` is needed only for an empty stream."""
    counts: dict[Exponent, int] = {}
    size = n
    for t in ts:
        if size is None:
            size = t.n
        elif size != t.n:
            raise DomainError(f"tableaux over different alphabets: {size} and {t.n}")
        e = content(t)
        counts[e] = counts.get(e, 0) + 1
    if size is None:
        raise DomainError("tableau_sum of an empty stream needs n")
    return SparsePoly._raw(size, counts)


def row_bound_sum(shape: Partition, beta: RTuple) -> SparsePoly:
    return tableau_sum(enumerate_tableaux(shape, beta), shape.n)


def demazure_poly(shape: Partition, p: RTuple) -> SparsePoly:
    return tableau_sum(demazure_set(shape, p), shape.n)


def identical_as_generating_functions(a: Iterable[Tableau], b: Iterable[Tableau]) -> bool:
    """Whether two tableau sets coincide, which is stronger than equal sums."""
    return frozenset(a) == frozenset(b)


# Key polynomials by divided differences ---------------------------------------------


def perm_dot_shape(p: RTuple, shape: Partition) -> tuple[int, ...]:
    """The weak composition alpha with alpha_{p_i} = lambda_i."""
    if p.n != shape.n:
        raise DomainError(f"permutation has {p.n} entries but shape has {shape.n} parts")
    alpha = [0] * shape.n
    for i, v in enumerate(p.entries):
        alpha[v - 1] = shape.parts[i]
    return tuple(alpha)


def isobaric_divided_difference(f: SparsePoly, i: int) -> SparsePoly:
    """f -> (x_i f - x_{i+1} s_i f) / (x_i - x_{i+1})."""
    xi = SparsePoly.variable(f.n, i)
    xj = SparsePoly.variable(f.n, i + 1)
    numerator = xi * f - xj * f.swap(i, i + 1)
    return numerator.divide_by_difference(i, i + 1)


@lru_cache(maxsize=None)
def _key_poly(alpha: Exponent, choice: str) -> SparsePoly:
    ascents = [i for i in range(1, len(alpha)) if alpha[i - 1] < alpha[i]]
    if not ascents:
        return SparsePoly.monomial(alpha)
    i = ascents[0] if choice == "first" else ascents[-1]
    swapped = list(alpha)
    swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
    return isobaric_divided_difference(_key_poly(tuple(swapped), choice), i)


def key_poly_dd(alpha: Sequence[int], choice: str = "first") -> SparsePoly:
    """Key polynomial of a weak composition by isobaric divided differences.

    ``choice`` picks the smallest ("first") or largest ("last") ascent at each
    step; both give the same polynomial.
    """
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise DomainError(f"composition {list(alpha)} has a negative part")
    if choice not in ("first", "last"):
        raise DomainError(f"unknown ascent choice {choice!r}")
    return _key_poly(alpha, choice)


# Flagged Schur determinants -------------------------------------------------------


@lru_cache(maxsize=None)
def flagged_h(k: int, a: int, b: int, n: int) -> SparsePoly:
    """Complete homogeneous polynomial of degree k in x_a..x_b (of x_1..x_n)."""
    if k < 0:
        return SparsePoly.zero(n)
    if k == 0:
        return SparsePoly.one(n)
    if a > b:
        return SparsePoly.zero(n)
    if not (1 <= a and b <= n):
        raise DomainError(f"variable range x{a}..x{b} is outside x1..x{n}")
    terms: dict[Exponent, int] = {}
    for combo in combinations_with_replacement(range(a - 1, b), k):
        e = [0] * n
        for v in combo:
            e[v] += 1
        terms[tuple(e)] = 1
    return SparsePoly._raw(n, terms)


def gv_matrix(shape: Partition, beta: RTuple) -> list[list[SparsePoly]]:
    """Entry (i, j) is h_{lambda_j - j + i}(x_i..x_{beta_j})."""
    if r_of_shape(shape) != beta.rset:
        raise DomainError(f"bounds have R = {beta.rset} but shape {shape} needs R = {r_of_shape(shape)}")
    if not is_upper(beta):
        raise DomainError(f"gv_determinant needs an upper tuple, got {beta}")
    n = shape.n
    lam = shape.parts
    return [
        [flagged_h(lam[j - 1] - j + i, i, beta.entries[j - 1], n) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]


def _determinant(matrix: list[list[SparsePoly]], n: int) -> SparsePoly:
    size = len(matrix)
    memo: dict[int, SparsePoly] = {}

    def minor(row: int, used: int) -> SparsePoly:
        # Laplace expansion along ``row`` over the columns not yet used.
        if row == size:
            return SparsePoly.one(n)
        if used in memo:
            return memo[used]
        total = SparsePoly.zero(n)
        sign = 1
        for col in range(size):
            if used >> col & 1:
                continue
            entry = matrix[row][col]
            if not entry.is_zero():
                term = entry * minor(row + 1, used | 1 << col)
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[used] = total
        return total

    return minor(0, 0)


def gv_determinant(shape: Partition, beta: RTuple) -> SparsePoly:
    return _determinant(gv_matrix(shape, beta), shape.n)


def is_nonpermutable(shape: Partition, beta: RTuple) -> bool:
    """Gapless core and bounded by its own platform."""
    if r_of_shape(shape) != beta.rset:
        raise DomainError(f"bounds have R = {beta.rset} but shape {shape} needs R = {r_of_shape(shape)}")
    if not is_upper(beta):
        raise DomainError(f"is_nonpermutable needs an upper tuple, got {beta}")
    return "gapless_core" in classify(beta) and entries_leq(beta.entries, platform(beta).entries)

