"""Acceptance checks, shared by ``abelia verify`` and the test suite.

Each check returns a :class:`CriterionResult`.  Tolerances come from a
named profile; ``default`` holds the reference tolerances and ``memory``
is the reduced-sieve fallback for the Tauberian fit.  A check never
adjusts its own tolerance: a failing comparison is reported as failing.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from . import constants as K
from .arith import MemoryBudgetError, factor_rational, factorize_with_table, spf_sieve
from .counting import c3_count_for_a, census_table
from .cubic import TraceOneCubic, discriminant
from .cyclo import CycloElement, elements_of, table_row
from .dirichlet import (
    coefficient,
    coefficient_closed,
    sieve_coefficients,
    streaming_partial_sums,
)
from .enumeration import (
    brute_c3_count_for_a,
    family_polynomials,
    positive_a_c3,
    weighted_count_by_height,
)

__all__ = [
    "CriterionResult",
    "TOLERANCE_PROFILES",
    "REFERENCE_TABLE",
    "SUITES",
    "run_suite",
    "criterion_table",
    "criterion_coefficient_oracle",
    "criterion_exact_formula",
    "criterion_coefficient_structure",
    "criterion_reducibles",
    "criterion_constants",
    "criterion_tauberian",
    "criterion_cyclotomic",
]


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    counterexample: dict | None = None
    seconds: float = 0.0
    budget_seconds: float | None = None

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key:>3}  {self.title}  ({self.seconds:.1f}s)"

    def as_dict(self) -> dict:
        return {
            "criterion": self.key,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "budget_seconds": self.budget_seconds,
            "detail": self.detail,
            "counterexample": self.counterexample,
        }


TOLERANCE_PROFILES: dict[str, dict] = {
    "default": {
        "disc_zero_abs": 2.0,
        "disc_nonzero_rel": 0.005,
        "c2_routes": 1e-6,
        "ratio_routes": 1e-6,
        "C_over_c2": 1e-10,
        "tauberian_X": 10**8,
        "tauberian_R": 0.02,
        "tauberian_ratio": (0.9, 1.1),
    },
    # the fallback when a 10**8 sieve will not fit
    "memory": {
        "disc_zero_abs": 2.0,
        "disc_nonzero_rel": 0.005,
        "c2_routes": 1e-6,
        "ratio_routes": 1e-6,
        "C_over_c2": 1e-10,
        "tauberian_X": 10**7,
        "tauberian_R": 0.05,
        "tauberian_ratio": (0.9, 1.1),
    },
}


def _profile(name: str) -> dict:
    try:
        return TOLERANCE_PROFILES[name]
    except KeyError:
        raise ValueError(
            f"unknown tolerance profile {name!r}; choose from {sorted(TOLERANCE_PROFILES)}"
        ) from None


def _timed(fn: Callable[..., list[CriterionResult]]):
    def wrapper(*args, **kwargs) -> list[CriterionResult]:
        t0 = time.perf_counter()
        results = fn(*args, **kwargs)
        dt = time.perf_counter() - t0
        for r in results:
            r.seconds = dt
            if r.budget_seconds is not None and dt > r.budget_seconds:
                r.passed = False
                r.detail["over_budget"] = True
        return results

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# (a, b, g, disc f as (sign, {p: e}), disc g as (sign, {p: e}), H^2)
REFERENCE_TABLE: tuple = (
    (0, 0, "t^2 - 2 t + 1", (0, {}), (0, {}), 1),
    (-1, 1, "t^2 + 4 t + 4", (0, {}), (0, {}), 4),
    (-2, 1, "t^2 + t + 7", (1, {7: 2}), (-1, {3: 3}), 7),
    (-2, 0, "t^2 - 20/7 t + 7", (1, {2: 2, 3: 2}), (-1, {2: 2, 3: 5, 7: -2}), 7),
    (-4, 4, "t^2 + 70/13 t + 13", (1, {2: 4, 3: 2}), (-1, {2: 4, 3: 5, 13: -2}), 13),
    (-4, -1, "t^2 - 5 t + 13", (1, {13: 2}), (-1, {3: 3}), 13),
    (-5, -3, "t^2 - 8 t + 16", (0, {}), (0, {}), 16),
    (-6, 7, "t^2 + 7 t + 19", (1, {19: 2}), (-1, {3: 3}), 19),
    (-6, 0, "t^2 - 56/19 t + 19", (1, {2: 2, 3: 2, 5: 2}),
     (-1, {2: 2, 3: 5, 5: 2, 19: -2}), 19),
    (-8, 12, "t^2 + 10 t + 25", (0, {}), (0, {}), 25),
    (-190, 719, "t^2 + 31 t + 571", (1, {7: 2, 571: 2}), (-1, {3: 3, 7: 2}), 571),
    (-190, -800, "t^2 - 23312/571 t + 571", (1, {2: 2, 3: 2, 5: 2, 7: 2, 13: 2}),
     (-1, {2: 2, 3: 5, 5: 2, 7: 2, 13: 2, 571: -2}), 571),
    (-192, 720, "t^2 + 17710/577 t + 577", (1, {2: 6, 3: 6, 19: 2}),
     (-1, {2: 6, 3: 9, 19: 2, 577: -2}), 577),
    (-192, -171, "t^2 - 11 t + 577", (1, {3: 4, 577: 2}), (-1, {3: 7}), 577),
    (-196, 1124, "t^2 + 922/19 t + 589", (1, {2: 4, 31: 2}),
     (-1, {2: 4, 3: 3, 19: -2}), 589),
    (-196, 1109, "t^2 + 1483/31 t + 589", (1, {7: 4, 19: 2}),
     (-1, {3: 3, 7: 4, 31: -2}), 589),
    (-196, 539, "t^2 + 673/31 t + 589", (1, {7: 2, 19: 2, 37: 2}),
     (-1, {3: 3, 7: 2, 31: -2, 37: 2}), 589),
    (-196, 349, "t^2 + 13 t + 589", (1, {3: 4, 19: 2, 31: 2}), (-1, {3: 7}), 589),
    (-196, 196, "t^2 + 3526/589 t + 589", (1, {2: 4, 3: 2, 5: 2, 7: 2, 13: 2}),
     (-1, {2: 4, 3: 5, 5: 2, 7: 2, 13: 2, 19: -2, 31: -2}), 589),
    (-196, -704, "t^2 - 20774/589 t + 589", (1, {2: 4, 3: 6, 5: 2, 7: 2}),
     (-1, {2: 4, 3: 9, 5: 2, 7: 2, 19: -2, 31: -2}), 589),
)


def _from_factored(sign: int, pe: dict[int, int]) -> Fraction:
    x = Fraction(sign)
    for p, e in pe.items():
        x *= Fraction(p) ** e
    return x


@_timed
def criterion_table(profile: str = "default") -> list[CriterionResult]:
    """Every reference row is reproduced exactly."""
    _profile(profile)
    res = CriterionResult("1", "correspondence table rows reproduced", True,
                          budget_seconds=1.0)
    for a, b, g, df, dg, h2 in REFERENCE_TABLE:
        row = table_row(TraceOneCubic(a, b))
        got = {
            "g": str(row.quadratic),
            "disc_f": factor_rational(row.disc_cubic),
            "disc_g": factor_rational(row.disc_quadratic),
            "height_squared": row.height_squared,
        }
        want = {"g": g, "disc_f": df, "disc_g": dg, "height_squared": h2}
        if got != want or row.disc_cubic != _from_factored(*df):
            res.passed = False
            res.counterexample = {"a": a, "b": b, "got": str(got), "want": str(want)}
            break
    res.detail["rows"] = len(REFERENCE_TABLE)
    return [res]


@_timed
def criterion_coefficient_oracle(
    profile: str = "default", limit: int = 6001, workers: int = 1
) -> list[CriterionResult]:
    """``d_n`` equals the weighted brute-force count for every ``n <= limit``."""
    _profile(profile)
    res = CriterionResult("2", f"d_n equals weighted brute count, n <= {limit}", True,
                          budget_seconds=300.0)
    brute = weighted_count_by_height(math.sqrt(limit), workers)
    mismatches = 0
    for n in range(1, limit + 1):
        want = brute.get(n, 0)
        got = coefficient(n)
        if got != want:
            mismatches += 1
            if res.counterexample is None:
                res.counterexample = {"n": n, "coefficient": got, "brute": want}
    res.passed = mismatches == 0
    res.detail["mismatches"] = mismatches
    return [res]


@_timed
def criterion_exact_formula(
    profile: str = "default", a_min: int = -2000, workers: int = 1
) -> list[CriterionResult]:
    """Per-``a`` cyclic count formula against brute force, plus the positive-``a`` scan."""
    _profile(profile)
    res = CriterionResult("3", f"cyclic count formula exact for {a_min} <= a <= 0", True,
                          budget_seconds=300.0)
    for a in range(0, a_min - 1, -1):
        got, want = c3_count_for_a(a), brute_c3_count_for_a(a)
        if got != want:
            res.passed = False
            res.counterexample = {"a": a, "formula": got, "brute": want}
            break
    found = positive_a_c3(range(1, 51), 10**4)
    if found and res.passed:
        res.passed = False
        res.counterexample = {"a": found[0].a, "b": found[0].b, "positive_a": True}
    res.detail["positive_a_cyclic"] = len(found)
    return [res]


@_timed
def criterion_coefficient_structure(
    profile: str = "default", limit: int = 10**6, pairs: int = 10**4, seed: int = 12
) -> list[CriterionResult]:
    """Vanishing off ``1 (mod 3)``, divisor sum = closed form, multiplicativity."""
    _profile(profile)
    res = CriterionResult("4", f"coefficient structure up to {limit}", True,
                          budget_seconds=60.0)
    table = sieve_coefficients(limit)
    spf = spf_sieve(limit)
    for n in range(1, limit + 1):
        f = factorize_with_table(n, spf)
        d = coefficient(n, f)
        if n % 3 != 1 and d != 0:
            res.passed = False
            res.counterexample = {"n": n, "coefficient": d, "reason": "nonzero off 1 mod 3"}
            break
        if d != coefficient_closed(n, f) or d != table[n]:
            res.passed = False
            res.counterexample = {
                "n": n, "coefficient": d, "closed": coefficient_closed(n, f),
                "sieve": int(table[n]),
            }
            break
    rng = random.Random(seed)
    checked = 0
    while res.passed and checked < pairs:
        m, n = rng.randint(1, limit), rng.randint(1, limit)
        if math.gcd(m, n) != 1:
            continue
        checked += 1
        if coefficient(m * n) != coefficient(m) * coefficient(n):
            res.passed = False
            res.counterexample = {"m": m, "n": n, "reason": "not multiplicative"}
    res.detail["coprime_pairs"] = checked
    return [res]


@_timed
def criterion_reducibles(profile: str = "default", H_max: int = 1000) -> list[CriterionResult]:
    """Reducible census against ``H/3`` and the area asymptotic."""
    tol = _profile(profile)
    zero, nonzero = census_table(H_max)
    a = CriterionResult("5a", f"|disc-zero count - H/3| <= {tol['disc_zero_abs']:g}, H <= {H_max}",
                        True, budget_seconds=60.0)
    worst = 0.0
    for H in range(1, H_max + 1):
        dev = abs(int(zero[H]) - H / 3)
        worst = max(worst, dev)
        if dev > tol["disc_zero_abs"] and a.counterexample is None:
            a.passed = False
            a.counterexample = {"H": H, "count_disc_zero": int(zero[H]), "H_over_3": H / 3}
    a.detail["max_deviation"] = worst
    b = CriterionResult("5b", "disc-nonzero count within 0.005 H^2 of the area term",
                        True, budget_seconds=60.0)
    for H in (300, 1000):
        if H > H_max:
            continue
        target = math.pi / (9 * math.sqrt(3)) * H * H - H / 6
        dev = abs(int(nonzero[H]) - target)
        b.detail[f"H={H}"] = {"count": int(nonzero[H]), "asymptotic": target,
                              "relative": dev / (H * H)}
        if dev > tol["disc_nonzero_rel"] * H * H:
            b.passed = False
            b.counterexample = {"H": H, "count_disc_nonzero": int(nonzero[H]),
                                "asymptotic": target}
    return [a, b]


@_timed
def criterion_constants(
    profile: str = "default", cutoffs: tuple[int, int] = (10**6, 10**7)
) -> list[CriterionResult]:
    """Route agreement for ``c2``, ``c1/c2`` and ``C``; cutoff stability."""
    tol = _profile(profile)
    lo, hi = cutoffs
    rep = K.C_and_D(hi)
    d = rep.deltas
    out = []

    def check(key, title, delta, bound):
        r = CriterionResult(key, title, abs(delta) <= bound,
                            {"delta": delta, "tolerance": bound}, budget_seconds=120.0)
        if not r.passed:
            r.counterexample = {"delta": delta, "tolerance": bound}
        out.append(r)

    check("6a", "c2 from Laurent data equals the closed display",
          d["c2_laurent_minus_display"], tol["c2_routes"])
    check("6b", "c1/c2 from Laurent data equals the prime-sum display",
          d["c1_over_c2_laurent_minus_display"], tol["ratio_routes"])
    check("6c", "C equals (3/4) c2", d["C_over_c2_minus_three_quarters"], tol["C_over_c2"])

    moves = CriterionResult("6d", f"cutoff {lo} -> {hi} moves each product within its bound",
                            True, budget_seconds=120.0)
    for name in ("E_at_2", "Eprime_at_2", "c2", "c1", "c2_display", "C_display",
                 "c1_over_c2_laurent", "c1_over_c2_display"):
        fn = getattr(K, name)
        a, b = fn(lo), fn(hi)
        move = float(abs(b.value - a.value))
        moves.detail[name] = {"move": move, "tail_bound": a.tail_bound}
        if move >= a.tail_bound and moves.counterexample is None:
            moves.passed = False
            moves.counterexample = {"quantity": name, "move": move, "tail_bound": a.tail_bound}
    out.append(moves)
    return out


@_timed
def criterion_tauberian(
    profile: str = "default", workers: int = 1, X: int | None = None
) -> list[CriterionResult]:
    """Second-order fit of the coefficient partial sum.

    ``R(X) = (S(X) - (c2/4) X log X)/X`` must sit within tolerance of exactly
    one of ``c1/2 - c2/4`` and ``c1/2``; the leading ratio must lie in the
    stated window.
    """
    tol = _profile(profile)
    X = X or tol["tauberian_X"]
    S = streaming_partial_sums([X], workers=workers)[X]
    rep = K.C_and_D()
    with mpmath.workdps(K.DPS):
        c2, c1 = rep.c2.value, rep.c1.value
        main = c2 / 4 * X * mpmath.log(X)
        R = float((S - main) / X)
        ratio = float(S / main)
        cands = {"c1/2 - c2/4": float(c1 / 2 - c2 / 4), "c1/2": float(c1 / 2)}
    near = [k for k, v in cands.items() if abs(R - v) <= tol["tauberian_R"]]
    a = CriterionResult(
        "7a", "second-order term matches exactly one candidate", len(near) == 1,
        {"X": X, "partial_sum": S, "R": R, "candidates": cands,
         "matched": near[0] if len(near) == 1 else None, "tolerance": tol["tauberian_R"]},
        budget_seconds=600.0,
    )
    if not a.passed:
        a.counterexample = {"R": R, "candidates": cands, "within": near}
    lo, hi = tol["tauberian_ratio"]
    b = CriterionResult(
        "7b", f"leading ratio S(X)/((c2/4) X log X) in [{lo}, {hi}]", lo <= ratio <= hi,
        {"X": X, "ratio": ratio}, budget_seconds=600.0,
    )
    if not b.passed:
        b.counterexample = {"X": X, "ratio": ratio, "window": [lo, hi]}
    return [a, b]


@_timed
def criterion_cyclotomic(
    profile: str = "default", limit: int = 6001, samples: int = 10**4, seed: int = 8
) -> list[CriterionResult]:
    """Round trip, element counts, ``disc(g) N^2 = -27 disc(f)``, integrality."""
    _profile(profile)
    res = CriterionResult("8", "cyclotomic correspondence properties", True,
                          budget_seconds=120.0)
    checked = 0
    for a in range(0, -((limit - 1) // 3) - 1, -1):
        for f in family_polynomials(a):
            checked += 1
            els = elements_of(f)
            row = table_row(f)
            bad = None
            if len(els) != f.weight():
                bad = "element count differs from weight"
            elif any(e.to_cubic() != (f.a, f.b) for e in els):
                bad = "round trip"
            elif row.disc_quadratic * row.height_squared**2 != -27 * discriminant(f.a, f.b):
                bad = "discriminant relation"
            if bad:
                res.passed = False
                res.counterexample = {"a": f.a, "b": f.b, "reason": bad}
                return [res]
    rng = random.Random(seed)
    integral_seen = 0
    for _ in range(samples):
        u = Fraction(rng.randint(-60, 60), rng.choice((1, 1, 2, 3, 7, 9)))
        v = Fraction(rng.randint(-60, 60), rng.choice((1, 1, 2, 3, 7, 9)))
        if u == 0 and v == 0:
            continue
        e = CycloElement(u, v)
        a_, b_ = e.to_cubic()
        integral = a_.denominator == 1 and b_.denominator == 1
        integral_seen += integral
        if integral != e.is_integral_image():
            res.passed = False
            res.counterexample = {"u": str(u), "v": str(v), "reason": "integrality"}
            break
    res.detail["family_polynomials"] = checked
    res.detail["integral_samples"] = integral_seen
    return [res]


SUITES: dict[str, tuple[Callable[..., list[CriterionResult]], ...]] = {
    "cyclo": (criterion_table, criterion_cyclotomic),
    "dn": (criterion_coefficient_oracle, criterion_coefficient_structure),
    "thm12": (criterion_exact_formula, criterion_reducibles),
    "constants": (criterion_constants, criterion_tauberian),
}
SUITES["all"] = SUITES["cyclo"] + SUITES["dn"] + SUITES["thm12"] + SUITES["constants"]


def run_suite(name: str, profile: str = "default", workers: int = 1) -> list[CriterionResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    _profile(profile)
    out: list[CriterionResult] = []
    for check in SUITES[name]:
        kwargs = {"profile": profile}
        if check in (criterion_coefficient_oracle, criterion_exact_formula, criterion_tauberian):
            kwargs["workers"] = workers
        try:
            out.extend(check(**kwargs))
        except MemoryBudgetError as exc:
            out.append(CriterionResult(check.__name__, str(exc), False))
    return out
