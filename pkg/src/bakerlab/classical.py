"""Classical 3-baker dynamics on the unit torus, open variant with the middle
Markov hole, ternary symbolic dynamics, and box-counting dimension of the
surviving Cantor set.

Coordinates live in [0,1) x [0,1).  The horizontal direction is stretched by
3, the vertical one contracted by 3; the three vertical strips
R_j = [j/3, (j+1)/3) x [0,1) form a Markov partition.  The open map discards
the middle strip R_1.  All operations accept floats or exact
`fractions.Fraction` coordinates; on 3-adic rationals the symbolic identities
hold exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "CANTOR_DIMENSION",
    "TorusPoint",
    "SymbolWord",
    "EscapeResult",
    "IntervalCover",
    "DimensionEstimate",
    "closed_step",
    "open_step",
    "inverse_open_step",
    "encode",
    "decode",
    "shift_consistency",
    "escape_time",
    "trapped_cover",
    "box_dimension",
    "survivor_counts",
    "escape_profile",
]

#: Box-counting (= Hausdorff) dimension of the middle-third Cantor set.
CANTOR_DIMENSION = math.log(2) / math.log(3)

Coordinate = float | Fraction


@dataclass(frozen=True)
class TorusPoint:
    """A point (q, p) on the unit torus, both coordinates in [0, 1)."""

    q: Coordinate
    p: Coordinate

    def __post_init__(self):
        if not (0 <= self.q < 1 and 0 <= self.p < 1):
            raise ValueError(f"point ({self.q}, {self.p}) outside [0,1) x [0,1)")


@dataclass(frozen=True)
class SymbolWord:
    """A finite window of a bi-infinite ternary itinerary.

    ``symbols[offset + i]`` is the symbol at time index i; indices i >= 0 are
    the ternary digits of q, indices i < 0 those of p (index -1 first).
    """

    symbols: tuple[int, ...]
    offset: int

    def __post_init__(self):
        if any(s not in (0, 1, 2) for s in self.symbols):
            raise ValueError("symbols must lie in {0, 1, 2}")
        if not (0 <= self.offset <= len(self.symbols)):
            raise ValueError("offset outside the symbol window")

    @property
    def forward(self) -> tuple[int, ...]:
        """Digits of q: (eps_0, eps_1, ...)."""
        return self.symbols[self.offset:]

    @property
    def backward(self) -> tuple[int, ...]:
        """Digits of p: (eps_-1, eps_-2, ...)."""
        return tuple(reversed(self.symbols[: self.offset]))

    def symbol_at(self, i: int) -> int:
        idx = self.offset + i
        if not (0 <= idx < len(self.symbols)):
            raise IndexError(f"time index {i} outside the encoded window")
        return self.symbols[idx]


@dataclass(frozen=True)
class EscapeResult:
    """First-entry record into the hole R_1; time is None for survivors."""

    escaped: bool
    time: int | None = None


@dataclass(frozen=True)
class IntervalCover:
    """Disjoint half-open subintervals of [0,1), all of width 3**(-depth)."""

    depth: int
    lefts: tuple[Fraction, ...]

    @property
    def width(self) -> Fraction:
        return Fraction(1, 3**self.depth)

    @property
    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        w = self.width
        return [(a, a + w) for a in self.lefts]


@dataclass(frozen=True)
class DimensionEstimate:
    value: float
    residual: float
    scales: tuple[float, ...]


def _branch(q: Coordinate) -> int:
    """Markov strip index of q: 0, 1 or 2 (half-open convention)."""
    return int(3 * q)


def closed_step(x: TorusPoint) -> TorusPoint:
    """One step of the closed 3-baker map.

    (q, p) -> (3q - j, (p + j)/3), with j the strip index of q; stretches
    horizontally, contracts vertically, preserves area.
    """
    j = _branch(x.q)
    return TorusPoint(3 * x.q - j, (x.p + j) / 3)


def open_step(x: TorusPoint) -> TorusPoint | None:
    """One step of the open baker map; None when x falls in the hole R_1."""
    if _branch(x.q) == 1:
        return None
    return closed_step(x)


def inverse_open_step(x: TorusPoint) -> TorusPoint | None:
    """Unique preimage under the open map; None when p lies in the middle
    third (such points have no preimage)."""
    j = _branch(x.p)
    if j == 1:
        return None
    return TorusPoint((x.q + j) / 3, 3 * x.p - j)


def _ternary_digits(val: Coordinate, n: int) -> tuple[int, ...]:
    """First n ternary digits of val in [0,1), terminating-from-below.

    Floats are snapped to the depth-n grid when within a 1e-6 relative
    neighbourhood of a grid point, so that e.g. float(1/3) encodes as 10...
    rather than 02222...; away from the grid the expansion of the exact
    binary value is used.
    """
    f = Fraction(val)
    if isinstance(val, float):
        scaled = val * 3**n
        g = round(scaled)
        if 0 <= g < 3**n and abs(f - Fraction(g, 3**n)) <= Fraction(1, 3**n * 10**6):
            f = Fraction(g, 3**n)
    digits = []
    for _ in range(n):
        f *= 3
        d = int(f)
        digits.append(d)
        f -= d
    return tuple(digits)


def encode(x: TorusPoint, depth: int) -> SymbolWord:
    """Itinerary window of x: depth digits of q forward, depth digits of p
    backward."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    fwd = _ternary_digits(x.q, depth)
    bwd = _ternary_digits(x.p, depth)
    return SymbolWord(tuple(reversed(bwd)) + fwd, depth)


def decode(word: SymbolWord) -> TorusPoint:
    """Left endpoint of the cylinder set described by the word (exact)."""
    q = sum(Fraction(s, 3 ** (i + 1)) for i, s in enumerate(word.forward))
    p = sum(Fraction(s, 3 ** (i + 1)) for i, s in enumerate(word.backward))
    return TorusPoint(Fraction(q), Fraction(p))


def shift_consistency(x: TorusPoint, depth: int) -> bool:
    """True iff one closed step acts as the left shift on the itinerary of x.

    Compares the window of the image at depth-1 with the shifted window of x
    at the given depth; intended as a property check on points whose window
    is unambiguous (away from 3-adic boundaries when using floats).
    """
    if depth < 2:
        raise ValueError("depth must be >= 2")
    wx = encode(x, depth)
    wy = encode(closed_step(x), depth - 1)
    return all(
        wy.symbol_at(i) == wx.symbol_at(i + 1) for i in range(-(depth - 1), depth - 1)
    )


def escape_time(x: TorusPoint, tmax: int) -> EscapeResult:
    """First t <= tmax with the t-th iterate in the hole R_1.

    A point already in R_1 escapes at t = 0; survivors through tmax get
    EscapeResult(escaped=False).
    """
    if tmax < 0:
        raise ValueError("tmax must be >= 0")
    cur = x
    for t in range(tmax + 1):
        if _branch(cur.q) == 1:
            return EscapeResult(True, t)
        cur = closed_step(cur)
    return EscapeResult(False)


def trapped_cover(depth: int) -> IntervalCover:
    """Depth-level approximation of the surviving Cantor set in q.

    Keeps the 2**depth intervals whose first `depth` ternary digits avoid the
    middle symbol; crossed with [0,1) in p this approximates the forward
    trapped set.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    lefts = [
        sum(Fraction(d, 3 ** (i + 1)) for i, d in enumerate(digits))
        for digits in itertools.product((0, 2), repeat=depth)
    ]
    return IntervalCover(depth, tuple(Fraction(a) for a in lefts))


def box_dimension(cover: IntervalCover) -> DimensionEstimate:
    """Box-counting dimension of a cover by least squares on the log-log
    scaling of box counts.

    Counts the depth-t boxes (width 3**-t, t = 1..depth) needed to cover the
    intervals and fits log(count) against log(1/width).  Exact on
    self-similar covers such as the middle-third construction.
    """
    if cover.depth < 2:
        raise ValueError("need at least 2 distinct scales (depth >= 2)")
    ts = range(1, cover.depth + 1)
    counts = []
    for t in ts:
        boxes = {(a.numerator * 3**t) // a.denominator for a in cover.lefts}
        counts.append(len(boxes))
    xs = np.array([t * math.log(3) for t in ts])
    ys = np.log(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return DimensionEstimate(float(slope), resid, tuple(3.0**-t for t in ts))


def survivor_counts(grid_depth: int, tmax: int) -> list[int]:
    """Exact survivor counts on the ternary grid q = j/3**grid_depth, p = 0.

    Entry t is the number of grid points whose first escape time is >= t
    (has not entered the hole at times 0..t-1).  On this grid the count is
    determined by the first min(t, grid_depth) digits of j, so the survivor
    fraction is exactly (2/3)**t for t <= grid_depth.
    """
    if tmax < 0 or grid_depth < 1:
        raise ValueError("need grid_depth >= 1 and tmax >= 0")
    n = 3**grid_depth
    js = np.arange(n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    counts = [n]
    for t in range(1, tmax + 1):
        if t <= grid_depth:
            digit = (js // 3 ** (grid_depth - t)) % 3
            alive &= digit != 1
        # beyond grid_depth the expansion continues with zeros: no escapes
        counts.append(int(alive.sum()))
    return counts


def escape_profile(n_points: int, tmax: int) -> list[tuple[int, int, float]]:
    """Escape-time histogram over a uniform q-grid (floating point).

    Returns rows (t, survivors, fraction) where survivors counts points with
    first escape time >= t; the fraction decays like (2/3)**t.
    """
    if n_points < 1 or tmax < 0:
        raise ValueError("need n_points >= 1 and tmax >= 0")
    q = (np.arange(n_points) + 0.5) / n_points
    rows = [(0, n_points, 1.0)]
    alive = np.ones(n_points, dtype=bool)
    for t in range(1, tmax + 1):
        in_hole = (q >= 1 / 3) & (q < 2 / 3)
        alive &= ~in_hole
        q = (3 * q) % 1.0
        n_alive = int(alive.sum())
        rows.append((t, n_alive, n_alive / n_points))
    return rows
