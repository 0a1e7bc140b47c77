"""Counting abelian cubics ``t^3 - t^2 + a t + b`` by height.

The package pairs exact counting formulas (a Dirichlet-series coefficient
and a lattice-point census) with brute-force enumeration that checks them,
and evaluates the constants of the asymptotic counts with error bounds.
"""

from __future__ import annotations

from .arith import Factorization, MemoryBudgetError, factorize
from .constants import C_and_D, ConstantsReport, EulerProductValue
from .counting import (
    ReducibleCensus,
    c3_count_for_a,
    on_ellipse_count,
    reducible_census,
)
from .cubic import GaloisClass, TraceOneCubic, discriminant
from .cyclo import CycloElement, QuadraticData, elements_of, quadratic_of
from .dirichlet import (
    CoefficientTable,
    coefficient,
    coefficient_closed,
    partial_sum,
    sieve_coefficients,
)
from .enumeration import (
    brute_c3_count_for_a,
    count_c3_root_height,
    family_polynomials,
    fast_c3_count_toric,
    weighted_count_by_height,
)

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "MemoryBudgetError",
    "factorize",
    "C_and_D",
    "ConstantsReport",
    "EulerProductValue",
    "ReducibleCensus",
    "c3_count_for_a",
    "on_ellipse_count",
    "reducible_census",
    "GaloisClass",
    "TraceOneCubic",
    "discriminant",
    "CycloElement",
    "QuadraticData",
    "elements_of",
    "quadratic_of",
    "CoefficientTable",
    "coefficient",
    "coefficient_closed",
    "partial_sum",
    "sieve_coefficients",
    "brute_c3_count_for_a",
    "count_c3_root_height",
    "fast_c3_count_toric",
    "family_polynomials",
    "weighted_count_by_height",
]
