"""The scanning tableau (right key) of a tableau and Demazure tableau sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InternalError
from .maps import RPermutation, is_r312_avoiding, r_projection
from .rtuples import RTuple
from .tableaux import Partition, Tableau, enumerate_tableaux, key_of, leq, r_of_shape

__all__ = [
    "ScanState",
    "ewis",
    "scan",
    "scan_paths",
    "remainder_max",
    "scan_via_remainders",
    "demazure_contains",
    "demazure_set",
    "ConvexityWitness",
    "convexity_witness",
]


def ewis(seq: Sequence[int]) -> list[int]:
    """1-based positions of the earliest weakly increasing subsequence."""
    if not seq:
        raise DomainError("ewis needs a nonempty sequence")
    positions = [1]
    current = seq[0]
    for pos in range(2, len(seq) + 1):
        if seq[pos - 1] >= current:
            positions.append(pos)
            current = seq[pos - 1]
    return positions


@dataclass
class ScanState:
    """Progress of the scan started at one column.

    ``unmarked[c]`` is how many top cells of column ``start + c`` are still
    unmarked; marked cells always sit at the bottom of their column.
    """

    tableau: Tableau
    start: int
    unmarked: list[int]
    emitted: list[int] = field(default_factory=list)

    @classmethod
    def begin(cls, t: Tableau, start: int) -> ScanState:
        return cls(t, start, [len(col) for col in t.columns[start:]])

    def done(self) -> bool:
        return self.unmarked[0] == 0

    def check_shape(self) -> None:
        u = self.unmarked
        if any(u[c] < u[c + 1] for c in range(len(u) - 1)):
            raise InternalError(f"unmarked cells {u} of {self.tableau!r} do not form a partition shape")

    def step(self) -> list[tuple[int, int]]:
        """Extract one scanning path; return its cells as 1-based (column, row)."""
        cols = self.tableau.columns
        live = [c for c, h in enumerate(self.unmarked) if h]
        bottoms = [cols[self.start + c][self.unmarked[c] - 1] for c in live]
        positions = ewis(bottoms)
        path = [live[pos - 1] for pos in positions]
        cells = [(self.start + c + 1, self.unmarked[c]) for c in path]
        self.emitted.append(bottoms[positions[-1] - 1])
        for c in path:
            self.unmarked[c] -= 1
        self.check_shape()
        return cells


def scan_paths(t: Tableau, column: int) -> list[list[tuple[int, int]]]:
    """The scanning paths that start in the given 1-based column, in order."""
    state = ScanState.begin(t, column - 1)
    paths = []
    while not state.done():
        paths.append(state.step())
    return paths


def scan(t: Tableau) -> Tableau:
    """The scanning tableau S(T)."""
    out = []
    for start in range(len(t.columns)):
        state = ScanState.begin(t, start)
        while not state.done():
            state.step()
        # The first path fills the lowest cell.
        out.append(tuple(reversed(state.emitted)))
    return Tableau._trusted(t.shape, tuple(out))


def _remainder_cells(t: Tableau, l: int, k: int) -> dict[tuple[int, int], int]:
    """Cells of the remainder U^{(l,k)}: strip the paths from (l, zeta_l) up to
    (l, k+1), then drop columns 1..l.  Keys are 1-based (column, row)."""
    cells = {
        (j, i): v for j, col in enumerate(t.columns, start=1) if j >= l for i, v in enumerate(col, start=1)
    }
    height = {j: len(t.columns[j - 1]) for j in range(l, len(t.columns) + 1)}
    while height[l] > k:
        last_value = None
        for j in range(l, len(t.columns) + 1):
            h = height[j]
            if h == 0:
                break
            v = cells[(j, h)]
            if last_value is None or v >= last_value:
                del cells[(j, h)]
                height[j] = h - 1
                last_value = v
    return {key: v for key, v in cells.items() if key[0] > l}


def remainder_max(t: Tableau, l: int, k: int) -> int:
    """Largest value of the remainder U^{(l,k)}, or 1 when it is empty."""
    zeta = t.shape.column_lengths
    if not (1 <= l <= len(zeta) and 1 <= k <= zeta[l - 1]):
        raise DomainError(f"cell (column {l}, row {k}) is outside shape {t.shape}")
    rest = _remainder_cells(t, l, k)
    return max(rest.values(), default=1)


def scan_via_remainders(t: Tableau) -> Tableau:
    """S(T) computed cell by cell as max(T_l(k), m(U^{(l,k)}))."""
    cols = tuple(
        tuple(max(v, remainder_max(t, l, k)) for k, v in enumerate(col, start=1))
        for l, col in enumerate(t.columns, start=1)
    )
    return Tableau._trusted(t.shape, cols)


def demazure_contains(shape: Partition, p: RTuple, t: Tableau) -> bool:
    if t.shape != shape:
        raise DomainError(f"tableau shape {t.shape} differs from {shape}")
    return leq(scan(t), key_of(shape, p))


def demazure_set(shape: Partition, p: RTuple, pool: Iterable[Tableau] | None = None) -> Iterator[Tableau]:
    """Tableaux whose scanning tableau lies below the key of p.

    ``pool`` defaults to every tableau of the shape, in enumeration order.
    """
    key = key_of(shape, p)
    source = enumerate_tableaux(shape) if pool is None else pool
    return (t for t in source if leq(scan(t), key))


@dataclass(frozen=True)
class ConvexityWitness:
    """Two members W, X of a Demazure set and a lattice point T on the segment
    between them that is missing from the set."""

    lower: Tableau
    upper: Tableau
    middle: Tableau
    weight: Fraction


def convexity_witness(shape: Partition, p: RTuple) -> ConvexityWitness:
    """Build W, X in D(p) and T = W + x (X - W) outside D(p) for a 312-containing p."""
    p = p if isinstance(p, RPermutation) else RPermutation(p.rset, p.entries)
    rset = r_of_shape(shape)
    if p.rset != rset:
        raise DomainError(f"permutation has R = {p.rset} but shape {shape} needs R = {rset}")
    if is_r312_avoiding(p):
        raise DomainError(f"{p} avoids the pattern; no witness exists")
    e = p.entries
    q = rset.q
    r = rset.r

    def carrel(pos: int) -> int:
        return next(h for h in range(1, r + 2) if q[h - 1] < pos <= q[h])

    # Patterns as 1-based positions a < b < c in three increasing carrels.
    patterns = [
        (a, b, c)
        for b in range(1, len(e) + 1)
        for a in range(1, q[carrel(b) - 1] + 1)
        for c in range(q[carrel(b)] + 1, len(e) + 1)
        if e[b - 1] < e[c - 1] < e[a - 1]
    ]
    h = min(carrel(b) for _, b, _ in patterns)
    patterns = [pat for pat in patterns if carrel(pat[1]) == h]
    b = max((pat[1] for pat in patterns), key=lambda pos: e[pos - 1])
    patterns = [pat for pat in patterns if pat[1] == b]
    a = min((pat[0] for pat in patterns), key=lambda pos: e[pos - 1])
    patterns = [pat for pat in patterns if pat[0] == a]
    g = carrel(a)
    c = patterns[0][2]
    pa, pb, pc = e[a - 1], e[b - 1], e[c - 1]
    between = [pos for pos in range(1, q[g] + 1) if pb < e[pos - 1] < pc]
    d = max(between, key=lambda pos: e[pos - 1]) if between else b

    chi = list(e)
    chi[b - 1], chi[d - 1] = chi[d - 1], chi[b - 1]
    omega = list(chi)
    omega[a - 1], omega[b - 1] = omega[b - 1], omega[a - 1]
    upper = key_of(shape, r_projection(chi, rset))
    lower = key_of(shape, r_projection(omega, rset))

    right = shape.part(q[h])
    last = shape.part(q[g])
    middle_cols = [list(col) for col in upper.columns]
    for j in range(right + 1, last + 1):
        middle_cols[j - 1] = [pc if v == pa else v for v in middle_cols[j - 1]]
    middle = Tableau(shape, middle_cols)

    weight = Fraction(pc - chi[b - 1], pa - chi[b - 1])
    for cw, cx, ct in zip(lower.columns, upper.columns, middle.columns):
        for w, x, tv in zip(cw, cx, ct):
            if w + weight * (x - w) != tv:
                raise InternalError("witness point is not on the segment between W and X")
    return ConvexityWitness(lower, upper, middle, weight)
