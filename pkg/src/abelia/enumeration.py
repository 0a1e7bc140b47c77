"""Brute-force enumeration of family polynomials.

This is the independent oracle for the counting formulas: it walks ``b``
over the full admissible range for each ``a`` and classifies exactly.
Only polynomials whose discriminant is a perfect square can be cyclic or
split, so a vectorized discriminant screen runs first and the exact
classifier sees the survivors.  The screen itself is exact (integer
arithmetic, float ``sqrt`` only as a starting guess that is then corrected).
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, TypeVar

import numpy as np

from .arith import snapped_floor
from .counting import ReducibleCensus, reducible_census
from .cubic import GaloisClass, TraceOneCubic, discriminant
from .dirichlet import CoefficientTable, partial_sum

__all__ = [
    "EnumerationRange",
    "b_bound",
    "square_discriminant_bs",
    "family_polynomials",
    "classification_histogram",
    "brute_c3_count_for_a",
    "weighted_count_for_a",
    "weighted_count_by_height",
    "fast_c3_count_toric",
    "count_c3_root_height",
    "positive_a_c3",
    "ROOT_HEIGHT_SCAN_LIMIT",
]

ROOT_HEIGHT_SCAN_LIMIT = 50

_T = TypeVar("_T")
_R = TypeVar("_R")

_INT64_SAFE = 2**62


def b_bound(a: int) -> int:
    """``floor(((1 - 2a)/3)^(3/2))``: real roots summing to 1 with
    ``sum x^2 = 1 - 2a`` have ``|xyz|`` at most this."""
    m = 1 - 2 * a
    if m < 0:
        raise ValueError(f"no real-rooted trace-one cubic has a = {a}")
    return math.isqrt(m**3 // 27)


@dataclass(frozen=True)
class EnumerationRange:
    """``a`` from 0 down to ``a_min``, each with ``|b| <= b_bound(a)``."""

    a_min: int

    def __post_init__(self) -> None:
        if self.a_min > 0:
            raise ValueError(f"a_min must be <= 0, got {self.a_min}")

    def a_values(self) -> range:
        return range(0, self.a_min - 1, -1)

    def b_bound(self, a: int) -> int:
        return b_bound(a)


def _pmap(fn: Callable[[_T], _R], items: Iterable[_T], workers: int) -> list[_R]:
    # ordered results regardless of worker count
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def square_discriminant_bs(a: int, b_lo: int, b_hi: int) -> list[int]:
    """All ``b`` in ``[b_lo, b_hi]`` for which ``disc(t^3 - t^2 + a t + b)`` is
    a perfect square (zero included), ascending."""
    if b_lo > b_hi:
        return []
    B = max(abs(b_lo), abs(b_hi))
    worst = 18 * abs(a) * B + 4 * B + a * a + 4 * abs(a) ** 3 + 27 * B * B
    if worst >= _INT64_SAFE:
        return [
            b
            for b in range(b_lo, b_hi + 1)
            if (d := discriminant(a, b)) >= 0 and math.isqrt(d) ** 2 == d
        ]
    b = np.arange(b_lo, b_hi + 1, dtype=np.int64)
    disc = (-18 * a + 4) * b - 27 * b * b + (a * a - 4 * a**3)
    keep = disc >= 0
    b, disc = b[keep], disc[keep]
    r = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
    for _ in range(2):
        r -= r * r > disc
        r += (r + 1) * (r + 1) <= disc
    return b[r * r == disc].tolist()


def family_polynomials(a: int) -> list[TraceOneCubic]:
    """Family members ``t^3 - t^2 + a t + b`` for this ``a``, ascending in ``b``."""
    if 1 - 2 * a < 0:
        # no real-rooted cubic; positive_a_c3 scans such a explicitly
        return []
    B = b_bound(a)
    out = []
    for b in square_discriminant_bs(a, -B, B):
        f = TraceOneCubic(a, b)
        if f.in_family():
            out.append(f)
    return out


def classification_histogram(a: int, b_lo: int, b_hi: int) -> Counter:
    """Exact class of every ``b`` in the range (no screening; small ranges)."""
    return Counter(TraceOneCubic(a, b).classify() for b in range(b_lo, b_hi + 1))


def brute_c3_count_for_a(a: int) -> int:
    if a > 0:
        raise ValueError(f"a must be <= 0, got {a}")
    return sum(
        1 for f in family_polynomials(a) if f.classify() is GaloisClass.C3_IRREDUCIBLE
    )


def weighted_count_for_a(a: int) -> int:
    return sum(f.weight() for f in family_polynomials(a))


def _height_squared_floor(H: float) -> int:
    if isinstance(H, int):
        return H * H
    return snapped_floor(float(H) * float(H))


def weighted_count_by_height(H: float, workers: int = 1) -> dict[int, int]:
    """``{n: sum of weights over family f with 1 - 3a = n}`` for ``n <= H^2``."""
    h2 = _height_squared_floor(H)
    if h2 < 1:
        raise ValueError(f"H must be >= 1, got {H}")
    a_values = list(EnumerationRange(-((h2 - 1) // 3)).a_values())
    weights = _pmap(weighted_count_for_a, a_values, workers)
    return {1 - 3 * a: w for a, w in zip(a_values, weights)}


def fast_c3_count_toric(
    H: float, table: CoefficientTable, census: ReducibleCensus | None = None
) -> int:
    """Cyclic cubics of toric height ``<= H`` from the coefficient partial sum
    and the reducible census: ``(sum d_n - zero - 2 nonzero) / 2``."""
    h2 = _height_squared_floor(H)
    if h2 > table.limit:
        raise ValueError(f"table limit {table.limit} does not cover H^2 = {h2}")
    if census is None:
        census = reducible_census(H)
    twice = partial_sum(table, h2) - census.count_disc_zero - 2 * census.count_disc_nonzero
    if twice % 2 or twice < 0:
        raise ArithmeticError(f"fast count at H = {H} is {twice}/2, not a count")
    return twice // 2


def _c3_in_box(a: int, b_max: int) -> int:
    B = min(b_max, b_bound(a))
    return sum(
        1
        for b in square_discriminant_bs(a, -B, B)
        if TraceOneCubic(a, b).classify() is GaloisClass.C3_IRREDUCIBLE
    )


def count_c3_root_height(H: float, workers: int = 1) -> int:
    """Cyclic cubics with ``max(|a|^(1/2), |b|^(1/3)) <= H`` by direct scan."""
    if H > ROOT_HEIGHT_SCAN_LIMIT:
        raise ValueError(
            f"direct scan is limited to H <= {ROOT_HEIGHT_SCAN_LIMIT}, got {H}"
        )
    if H < 0:
        raise ValueError(f"H must be >= 0, got {H}")
    a_max = _height_squared_floor(H)
    b_max = H**3 if isinstance(H, int) else snapped_floor(float(H) ** 3)
    # cyclic cubics have a <= 0
    counts = _pmap(lambda a: _c3_in_box(a, b_max), range(0, -a_max - 1, -1), workers)
    return sum(counts)


def positive_a_c3(a_values: Iterable[int], b_max: int) -> list[TraceOneCubic]:
    """Every cyclic cubic with ``a`` in ``a_values`` and ``|b| <= b_max``."""
    found = []
    for a in a_values:
        for b in square_discriminant_bs(a, -b_max, b_max):
            f = TraceOneCubic(a, b)
            if f.classify() is GaloisClass.C3_IRREDUCIBLE:
                found.append(f)
    return found
