"""Trace-one cubics ``t^3 - t^2 + a t + b`` and their exact classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import divisors, exact_sqrt, factorize

__all__ = [
    "GaloisClass",
    "TraceOneCubic",
    "FAMILY_CLASSES",
    "discriminant",
    "render_cubic",
]


class GaloisClass(enum.Enum):
    C3_IRREDUCIBLE = "C3Irreducible"
    S3_IRREDUCIBLE = "S3Irreducible"
    LINEAR_TIMES_IRREDUCIBLE_QUADRATIC = "LinearTimesIrreducibleQuadratic"
    SPLIT_DISTINCT = "SplitDistinct"
    SPLIT_DOUBLE = "SplitDouble"
    SPLIT_TRIPLE = "SplitTriple"

    def __str__(self) -> str:
        return self.value


FAMILY_CLASSES = frozenset(
    {GaloisClass.C3_IRREDUCIBLE, GaloisClass.SPLIT_DISTINCT, GaloisClass.SPLIT_DOUBLE}
)


def discriminant(a: int, b: int) -> int:
    return -18 * a * b + 4 * b + a * a - 4 * a**3 - 27 * b * b


def _quadratic_roots(p: int, q: int) -> tuple[int, int] | None:
    # integer roots of t^2 + p t + q, or None
    r = exact_sqrt(p * p - 4 * q)
    if r is None or (r - p) % 2:
        return None
    return ((-p - r) // 2, (-p + r) // 2)


@dataclass(frozen=True)
class TraceOneCubic:
    """The polynomial ``t^3 - t^2 + a t + b`` over the integers."""

    a: int
    b: int

    def __str__(self) -> str:
        return render_cubic(self.a, self.b)

    def discriminant(self) -> int:
        return discriminant(self.a, self.b)

    def __call__(self, t: int) -> int:
        return ((t - 1) * t + self.a) * t + self.b

    def integer_roots(self) -> tuple[int, ...]:
        """All integer roots with multiplicity, ascending.

        A monic integer cubic has only integer rational roots, and they
        divide ``b``.  Empty means irreducible over the rationals.
        """
        a, b = self.a, self.b
        if b == 0:
            r = 0
        else:
            for d in divisors(factorize(abs(b))):
                if self(d) == 0:
                    r = d
                    break
                if self(-d) == 0:
                    r = -d
                    break
            else:
                return ()
        # t^3 - t^2 + a t + b = (t - r)(t^2 + (r - 1) t + (r^2 - r + a))
        rest = _quadratic_roots(r - 1, r * r - r + a)
        if rest is None:
            return (r,)
        return tuple(sorted((r, *rest)))

    def classify(self) -> GaloisClass:
        roots = self.integer_roots()
        if not roots:
            disc = self.discriminant()
            if disc > 0 and exact_sqrt(disc) is not None:
                return GaloisClass.C3_IRREDUCIBLE
            return GaloisClass.S3_IRREDUCIBLE
        if len(roots) == 1:
            return GaloisClass.LINEAR_TIMES_IRREDUCIBLE_QUADRATIC
        distinct = len(set(roots))
        if distinct == 3:
            return GaloisClass.SPLIT_DISTINCT
        if distinct == 2:
            return GaloisClass.SPLIT_DOUBLE
        return GaloisClass.SPLIT_TRIPLE

    def in_family(self) -> bool:
        return self.classify() in FAMILY_CLASSES

    def weight(self) -> int:
        """Number of torus points with this characteristic polynomial."""
        cls = self.classify()
        if cls not in FAMILY_CLASSES:
            raise ValueError(f"{self} ({cls}) is not in the family")
        return 1 if cls is GaloisClass.SPLIT_DOUBLE else 2

    def toric_height_squared(self) -> int:
        if self.a > 0:
            raise ValueError(f"toric height needs a <= 0, got a = {self.a}")
        return 1 - 3 * self.a

    def toric_height(self) -> float:
        return math.sqrt(self.toric_height_squared())

    def root_height(self) -> float:
        return max(math.sqrt(abs(self.a)), abs(self.b) ** (1.0 / 3.0))


def _term(coef: int, mono: str) -> str:
    if coef == 0:
        return ""
    sign = "-" if coef < 0 else "+"
    mag = abs(coef)
    body = mono if (mag == 1 and mono) else f"{mag}{mono}"
    return f" {sign} {body}"


def render_cubic(a: int, b: int) -> str:
    """``'t^3 - t^2 - 2t + 1'`` style rendering with normalized signs."""
    return "t^3 - t^2" + _term(a, "t") + _term(b, "")
