"""Lattice points on the ellipses ``x^2 + y^2 + xy - x - y = L`` and the
counts built from them.

A point ``(x, y)`` stands for the root triple ``(x, y, 1 - x - y)`` of a
split trace-one cubic with ``a = -L``.  Split family polynomials of toric
height at most ``H`` are the ``S3``-orbits of points in the closed region
``L <= (H^2 - 1)/3``.  The exact per-``a`` count of cyclic cubics is the
divisor sum minus a sixth of the points on one ellipse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import snapped_floor
from .dirichlet import coefficient

__all__ = [
    "EllipseLevel",
    "ReducibleCensus",
    "NonIntegralCountError",
    "ellipse_level",
    "on_ellipse_count",
    "ellipse_points",
    "c3_count_for_a",
    "reducible_census",
    "census_table",
    "stabilized_point_count",
    "reducible_asymptotic",
    "level_bound",
]


class NonIntegralCountError(ArithmeticError):
    """A counting formula evaluated to a non-integer."""


@dataclass(frozen=True)
class EllipseLevel:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.n % 3 != 1:
            raise ValueError(f"need n >= 1 with n = 1 (mod 3), got {self.n}")

    @property
    def level(self) -> int:
        return (self.n - 1) // 3


def ellipse_level(n: int) -> int:
    return EllipseLevel(n).level


@dataclass(frozen=True)
class ReducibleCensus:
    height_squared: float
    count_disc_zero: int
    count_disc_nonzero: int

    @property
    def total(self) -> int:
        return self.count_disc_zero + self.count_disc_nonzero


def level_bound(H: float) -> int:
    """Largest integer ``L`` with ``3 L <= H^2 - 1``.

    ``H`` may be an int, a Fraction, or a float such as ``math.sqrt(7)``; a
    float ``H^2`` within 1e-9 relative of an integer is snapped to it.
    """
    if isinstance(H, (int, Fraction)):
        h2 = math.floor(Fraction(H) ** 2)
    else:
        h2 = snapped_floor(float(H) * float(H))
    if h2 < 1:
        raise ValueError(f"height must be >= 1, got {H}")
    return (h2 - 1) // 3


def _height_squared(H: float) -> float:
    return H * H if isinstance(H, int) else float(H) ** 2


def _x_range(L: int) -> range:
    # real x with -3x^2 + 2x + 1 + 4L >= 0, widened by one and filtered later
    r = math.isqrt(4 * (3 * L + 1))
    return range((1 - r) // 3 - 1, (1 + r) // 3 + 2)


def _y_solutions(x: int, L: int) -> tuple[int, ...]:
    # integer y with y^2 + (x - 1) y + (x^2 - x - L) = 0
    disc = -3 * x * x + 2 * x + 1 + 4 * L
    if disc < 0:
        return ()
    r = math.isqrt(disc)
    if r * r != disc or (r + 1 - x) % 2:
        return ()
    if r == 0:
        return ((1 - x) // 2,)
    return ((1 - x - r) // 2, (1 - x + r) // 2)


def ellipse_points(n: int) -> list[tuple[int, int]]:
    """Integer points on ``x^2 + y^2 + xy - x - y = (n - 1)/3``."""
    L = ellipse_level(n)
    return [(x, y) for x in _x_range(L) for y in _y_solutions(x, L)]


def on_ellipse_count(n: int) -> int:
    L = ellipse_level(n)
    return sum(len(_y_solutions(x, L)) for x in _x_range(L))


def c3_count_for_a(a: int) -> int:
    """Number of ``b`` with ``t^3 - t^2 + a t + b`` cyclic cubic, for ``a <= 0``."""
    if a > 0:
        raise ValueError(f"a must be <= 0, got {a}")
    n = 1 - 3 * a
    value = Fraction(coefficient(n), 2) - Fraction(on_ellipse_count(n), 6)
    if value.denominator != 1 or value < 0:
        raise NonIntegralCountError(f"count formula at a = {a} gave {value}")
    return int(value)


def _y_interval(x: int, L: int) -> tuple[int, int] | None:
    # integer y with level <= L, i.e. (2y + x - 1)^2 <= disc
    disc = -3 * x * x + 2 * x + 1 + 4 * L
    if disc < 0:
        return None
    r = math.isqrt(disc)
    lo = -((x - 1 + r) // 2)  # ceil((1 - x - r) / 2)
    hi = (1 - x + r) // 2
    return (lo, hi) if lo <= hi else None


def reducible_census(H: float) -> ReducibleCensus:
    """Reducible family polynomials of toric height ``<= H``, split by discriminant.

    Each ``S3``-orbit of lattice points in the closed region is counted
    once, through its sorted representative ``x <= y <= 1 - x - y``; the
    orbit's polynomial has a repeated root exactly when the triple does.
    """
    L = level_bound(H)
    zero = nonzero = 0
    for x in _x_range(L):
        span = _y_interval(x, L)
        if span is None:
            continue
        # sorted representative: x <= y and y <= 1 - x - y
        lo = max(span[0], x)
        hi = min(span[1], (1 - x) // 2)
        if lo > hi:
            continue
        reps = hi - lo + 1
        repeated = 0
        if lo <= x <= hi:
            repeated += 1
        if (1 - x) % 2 == 0 and lo <= (1 - x) // 2 <= hi:
            repeated += 1
        zero += repeated
        nonzero += reps - repeated
    return ReducibleCensus(_height_squared(H), zero, nonzero)


def census_table(H_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Census counts for every integer ``H`` in ``1..H_max`` in one pass.

    Returns ``(zero, nonzero)`` arrays indexed by ``H`` (index 0 unused).
    """
    if H_max < 1:
        raise ValueError(f"H_max must be >= 1, got {H_max}")
    L_max = level_bound(H_max)
    hist_zero = np.zeros(L_max + 1, dtype=np.int64)
    hist_nonzero = np.zeros(L_max + 1, dtype=np.int64)
    for x in _x_range(L_max):
        span = _y_interval(x, L_max)
        if span is None:
            continue
        lo = max(span[0], x)
        hi = min(span[1], (1 - x) // 2)
        if lo > hi:
            continue
        y = np.arange(lo, hi + 1, dtype=np.int64)
        lev = x * x + y * y + x * y - x - y
        rep = (y == x) | (1 - x - y == y)
        np.add.at(hist_zero, lev[rep], 1)
        np.add.at(hist_nonzero, lev[~rep], 1)
    cz = np.cumsum(hist_zero)
    cn = np.cumsum(hist_nonzero)
    Hs = np.arange(1, H_max + 1)
    idx = (Hs * Hs - 1) // 3
    zero = np.zeros(H_max + 1, dtype=np.int64)
    nonzero = np.zeros(H_max + 1, dtype=np.int64)
    zero[1:] = cz[idx]
    nonzero[1:] = cn[idx]
    return zero, nonzero


def stabilized_point_count(H: float) -> int:
    """Lattice points of the closed region lying on ``x = y``, ``y = 1 - 2x``
    or ``x = 1 - 2y``.

    The three lines meet only at ``(1/3, 1/3)``, and along each one the
    level is ``3t^2 - 2t`` for the integer parameter ``t``.
    """
    L = level_bound(H)
    r = math.isqrt(3 * L + 1)
    ts = range((1 - r) // 3 - 1, (1 + r) // 3 + 2)
    per_line = sum(1 for t in ts if 3 * t * t - 2 * t <= L)
    return 3 * per_line


def reducible_asymptotic(H: float) -> float:
    return math.pi / (9 * math.sqrt(3)) * H * H - H / 6
