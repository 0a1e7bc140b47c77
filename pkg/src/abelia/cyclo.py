"""Parametrization of family cubics by elements ``u + v*zeta`` of Q(sqrt(-3)).

``zeta`` is a primitive cube root of unity.  An element of norm ``N`` and
trace ``T`` maps to

    t^3 - t^2 + (1 - N)/3 t + (N (3 - T) - 1)/27

and the elements over a cubic ``f`` are the roots of
``g = t^2 - T t + N`` with ``N = 1 - 3a`` and ``T = 3 - (1 + 27 b)/(1 - 3a)``.

That sign convention matches the worked table of cyclic cubics (for
example ``t^2 + t + 7 <-> t^3 - t^2 - 2t + 1``).  The opposite sign on the
constant term, ``(1 + N (T - 3))/27`` with ``T = 3 - (1 - 27 b)/(1 - 3a)``,
is also self-consistent but sends ``t^2 + t + 7`` to ``t^3 - t^2 - 2t - 1``,
which has discriminant -31.  It is available as ``convention="printed"``
for comparison only.

All arithmetic is exact over :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import exact_sqrt, format_factored
from .cubic import TraceOneCubic, discriminant

__all__ = [
    "CycloElement",
    "QuadraticData",
    "quadratic_of",
    "elements_of",
    "format_fraction",
    "parse_fraction",
    "TableRow",
    "table_row",
    "rows_at_height",
]

Rational = Union[int, Fraction]

_CONVENTIONS = ("table", "printed")


def _check_convention(convention: str) -> None:
    if convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}, got {convention!r}")


def format_fraction(x: Rational) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class CycloElement:
    u: Fraction
    v: Fraction

    def __init__(self, u: Rational, v: Rational) -> None:
        object.__setattr__(self, "u", Fraction(u))
        object.__setattr__(self, "v", Fraction(v))

    def __str__(self) -> str:
        return f"({format_fraction(self.u)}, {format_fraction(self.v)})"

    def _nonzero(self) -> None:
        if self.u == 0 and self.v == 0:
            raise ValueError("the zero element has no norm/trace image")

    @property
    def norm(self) -> Fraction:
        return self.u * self.u + self.v * self.v - self.u * self.v

    @property
    def trace(self) -> Fraction:
        return 2 * self.u - self.v

    def norm_trace(self) -> tuple[Fraction, Fraction]:
        self._nonzero()
        return self.norm, self.trace

    def __mul__(self, other: CycloElement) -> CycloElement:
        # zeta^2 = -1 - zeta
        u, v, x, y = self.u, self.v, other.u, other.v
        return CycloElement(u * x - v * y, u * y + v * x - v * y)

    def conjugate(self) -> CycloElement:
        # conj(zeta) = zeta^2 = -1 - zeta
        return CycloElement(self.u - self.v, -self.v)

    def height(self) -> float:
        self._nonzero()
        return math.sqrt(self.norm)

    def to_cubic(self, convention: str = "table") -> tuple[Fraction, Fraction]:
        """``(a, b)`` of the characteristic polynomial ``t^3 - t^2 + a t + b``."""
        _check_convention(convention)
        N, T = self.norm_trace()
        a = (1 - N) / 3
        if convention == "table":
            b = (N * (3 - T) - 1) / 27
        else:
            b = (1 + N * (T - 3)) / 27
        return a, b

    def is_integral_image(self) -> bool:
        """Whether :meth:`to_cubic` lands in ``Z x Z``."""
        N, T = self.norm_trace()
        m = N * (3 - T)
        return (
            N.denominator == 1
            and N % 3 == 1
            and m.denominator == 1
            and m % 27 == 1
        )


@dataclass(frozen=True)
class QuadraticData:
    """``g = t^2 - T t + N``."""

    trace: Fraction
    norm: Fraction

    @property
    def discriminant(self) -> Fraction:
        return self.trace * self.trace - 4 * self.norm

    def __str__(self) -> str:
        out = "t^2"
        lin = -self.trace
        if lin:
            mag = abs(lin)
            coef = "" if mag == 1 else f"{format_fraction(mag)} "
            out += f" {'-' if lin < 0 else '+'} {coef}t"
        if self.norm:
            out += f" {'-' if self.norm < 0 else '+'} {format_fraction(abs(self.norm))}"
        return out


def quadratic_of(a: Rational, b: Rational, convention: str = "table") -> QuadraticData:
    _check_convention(convention)
    a, b = Fraction(a), Fraction(b)
    N = 1 - 3 * a
    if N == 0:
        raise ValueError("quadratic_of is undefined at a = 1/3")
    if convention == "table":
        T = 3 - (1 + 27 * b) / N
    else:
        T = 3 - (1 - 27 * b) / N
    return QuadraticData(T, N)


def elements_of(f: TraceOneCubic) -> list[CycloElement]:
    """Elements of Q(sqrt(-3)) whose image is ``f``, positive ``v`` first.

    One element when ``f`` has a double root, two otherwise.
    """
    disc = discriminant(f.a, f.b)
    r = exact_sqrt(disc)
    if r is None:
        raise ValueError(f"{f} is not in the family (discriminant {disc} is not a square)")
    g = quadratic_of(f.a, f.b)
    s = Fraction(3 * r) / g.norm
    first = CycloElement(g.trace / 2 + s / 2, s)
    if s == 0:
        return [first]
    return [first, CycloElement(g.trace / 2 - s / 2, -s)]


@dataclass(frozen=True)
class TableRow:
    """One line of the cubic/quadratic correspondence table."""

    cubic: TraceOneCubic
    quadratic: QuadraticData
    disc_cubic: int
    disc_quadratic: Fraction
    height_squared: int

    def as_dict(self) -> dict:
        return {
            "a": self.cubic.a,
            "b": self.cubic.b,
            "f": str(self.cubic),
            "g": str(self.quadratic),
            "disc_f": self.disc_cubic,
            "disc_f_factored": format_factored(self.disc_cubic),
            "disc_g": format_fraction(self.disc_quadratic),
            "disc_g_factored": format_factored(self.disc_quadratic),
            "height_squared": self.height_squared,
        }


def table_row(f: TraceOneCubic) -> TableRow:
    g = quadratic_of(f.a, f.b)
    return TableRow(f, g, discriminant(f.a, f.b), g.discriminant, 1 - 3 * f.a)


def rows_at_height(n: int) -> list[TableRow]:
    """Table rows for every family cubic with ``H^2 = n``, descending in ``b``."""
    from .enumeration import family_polynomials

    if n < 1 or n % 3 != 1:
        return []
    fs = family_polynomials((1 - n) // 3)
    return [table_row(f) for f in sorted(fs, key=lambda f: -f.b)]
