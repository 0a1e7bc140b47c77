"""Leading constants of the counting asymptotics, with error bounds.

The height zeta function, written in ``z = s/2``, is

    Z(z) = E(z) * zeta_K(z)^2,   K = Q(sqrt(-3)),

    E(z) = (1 - 3^-z)^2 * prod_{q = 2 mod 3} (1 - q^-2z)
                        * prod_{p = 1 mod 3} (1 - 3 p^-2z + 2 p^-3z).

Expanding at ``s = 2`` gives ``c2 (s-2)^-2 + c1 (s-2)^-1 + ...`` with

    c2 = 4 L^2 E(2),   c1 = 4 L (gamma L + L') E(2) + 4 L^2 E'(2),

where ``L = L(1, chi)`` for the quadratic character mod 3 and ``'`` on ``E``
is ``d/ds``.  The truncated Euler products are accumulated as sums of
logarithms with :func:`math.fsum` (exactly rounded, so independent of
summation order) and combined in :mod:`mpmath` at :data:`DPS` digits.
Every truncated quantity carries a rigorous tail bound.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .arith import primes_up_to

__all__ = [
    "DPS",
    "DEFAULT_CUTOFF",
    "EulerProductValue",
    "ConstantsReport",
    "L1_chi",
    "Lprime1_chi",
    "Lprime1_chi_series",
    "L1_chi_series",
    "log_gamma_ratio",
    "E_at_2",
    "Eprime_at_2",
    "prime_sums",
    "c2",
    "c2_display",
    "c1",
    "c1_over_c2_laurent",
    "c1_over_c2_display",
    "C_display",
    "C_and_D",
]

DPS = 40
DEFAULT_CUTOFF = 10**7
MIN_CUTOFF = 10**3


def _precise(fn):
    # evaluate under DPS digits without touching the caller's mpmath context
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workdps(DPS):
            return fn(*args, **kwargs)

    return wrapper


@dataclass(frozen=True)
class EulerProductValue:
    """A truncated product or prime sum: the truncated value, a bound on
    ``|true - value|``, and the largest prime used."""

    value: mpmath.mpf
    tail_bound: float
    prime_cutoff: int

    def __float__(self) -> float:
        return float(self.value)

    def as_dict(self, digits: int = 20) -> dict:
        return {
            "value": mpmath.nstr(self.value, digits),
            "error_bound": float(self.tail_bound),
            "prime_cutoff": self.prime_cutoff,
        }


def _mp(x) -> mpmath.mpf:
    return mpmath.mpf(x)


@_precise
def L1_chi() -> mpmath.mpf:
    """``L(1, chi) = pi / (3 sqrt 3)``, half the residue limit of
    ``(s - 2) zeta_K(s/2)`` at ``s = 2``."""
    return mpmath.pi / (3 * mpmath.sqrt(3))


@_precise
def log_gamma_ratio() -> mpmath.mpf:
    """``log(Gamma(1/3) / Gamma(2/3))``."""
    third = _mp(1) / 3
    return mpmath.log(mpmath.gamma(third) / mpmath.gamma(2 * third))


@_precise
def Lprime1_chi() -> mpmath.mpf:
    """``L'(1, chi)`` from its Gamma-function closed form."""
    minus = mpmath.pi / mpmath.sqrt(3) * (
        log_gamma_ratio() - (mpmath.euler + mpmath.log(2 * mpmath.pi)) / 3
    )
    return -minus


def _chi(n: np.ndarray) -> np.ndarray:
    r = n % 3
    return np.where(r == 1, 1.0, np.where(r == 2, -1.0, 0.0))


def L1_chi_series(terms: int = 10**6) -> float:
    """``sum chi(n)/n`` over whole periods, averaged over the last period.

    Partial sums oscillate with period 3; averaging three consecutive
    partial sums cancels the leading oscillation.
    """
    n = np.arange(1, 3 * (terms // 3) + 3, dtype=np.float64)
    partial = np.cumsum(_chi(n.astype(np.int64)) / n)
    return float(partial[-3:].mean())


def Lprime1_chi_series(terms: int = 10**6) -> float:
    """``-sum chi(n) log(n)/n``, period-averaged as in :func:`L1_chi_series`."""
    n = np.arange(1, 3 * (terms // 3) + 3, dtype=np.float64)
    partial = np.cumsum(_chi(n.astype(np.int64)) * np.log(n) / n)
    return -float(partial[-3:].mean())


@functools.lru_cache(maxsize=4)
def _split_primes(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    if cutoff < MIN_CUTOFF:
        raise ValueError(f"prime cutoff must be >= {MIN_CUTOFF}, got {cutoff}")
    P = primes_up_to(cutoff).astype(np.float64)
    return P[P % 3 == 2], P[P % 3 == 1]


@functools.lru_cache(maxsize=8)
def _log_product(cutoff: int) -> float:
    # log of prod_q (1 - q^-2) prod_p (1 - 3p^-2 + 2p^-3), primes <= cutoff
    q, p = _split_primes(cutoff)
    terms_q = np.log1p(-1.0 / (q * q))
    terms_p = np.log1p((-3.0 * p + 2.0) / (p * p * p))
    return math.fsum(terms_q) + math.fsum(terms_p)


def _product_tail(cutoff: int) -> float:
    # |log factor| <= 4/n^2 for every prime n > 1000, and sum_{n > P} 4/n^2 <= 4/P
    return 4.0 / cutoff


def _log_sum_tail(cutoff: int, scale: float) -> float:
    # sum_{n > P} scale * log(n)/n^2 <= scale * (log P + 1)/P  (decreasing for n > e)
    return scale * (math.log(cutoff) + 1.0) / cutoff


@_precise
def _euler_product(cutoff: int) -> EulerProductValue:
    # the bare product over q and p, without the factor at 3
    lp = _log_product(cutoff)
    val = mpmath.exp(_mp(lp))
    # true/truncated lies in [exp(-4/P), 1] since every omitted factor is in (0, 1)
    bound = float(val) * -math.expm1(-_product_tail(cutoff))
    return EulerProductValue(val, bound, cutoff)


@_precise
def E_at_2(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``E(2)``, the Euler product including ``(1 - 1/3)^2``."""
    bare = _euler_product(prime_cutoff)
    f3 = _mp(4) / 9
    return EulerProductValue(f3 * bare.value, 4 / 9 * bare.tail_bound, prime_cutoff)


@functools.lru_cache(maxsize=8)
def prime_sums(cutoff: int) -> dict[str, float]:
    """Prime sums over primes ``<= cutoff``.

    ``laurent_q = sum log q/(q^2 - 1)`` and
    ``laurent_p = sum 3(p-1) log p/(p^3 - 3p + 2)`` are the per-factor
    ``d/ds log E`` terms at ``s = 2``.  The printed ``c1/c2`` formula reuses
    ``laurent_q`` and adds ``display_p = sum (p+1) log p/(p^3 - 3p + 2)``.
    """
    q, p = _split_primes(cutoff)
    lq, lp = np.log(q), np.log(p)
    cubic = p * p * p - 3.0 * p + 2.0
    return {
        "laurent_q": math.fsum(lq / (q * q - 1.0)),
        "laurent_p": math.fsum(3.0 * (p - 1.0) * lp / cubic),
        "display_p": math.fsum((p + 1.0) * lp / cubic),
    }


@_precise
def _log_derivative(cutoff: int) -> EulerProductValue:
    # E'(2)/E(2) with d/ds = (1/2) d/dz
    sums = prime_sums(cutoff)
    # factor at 3: d/dz log (1 - 3^-z)^2 = 2 log 3/(3^z - 1) = log 3 at z = 1
    val = mpmath.log(3) / 2 + _mp(sums["laurent_q"]) + _mp(sums["laurent_p"])
    # per prime n > P both kinds of term are <= 3 log n / n^2
    return EulerProductValue(val, _log_sum_tail(cutoff, 3.0), cutoff)


@_precise
def Eprime_at_2(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``E'(2)`` (derivative in ``s``) as ``E(2) * (log E)'(2)``."""
    E = E_at_2(prime_cutoff)
    ld = _log_derivative(prime_cutoff)
    val = E.value * ld.value
    err = E.tail_bound * (abs(float(ld.value)) + ld.tail_bound)
    err += float(E.value) * ld.tail_bound
    return EulerProductValue(val, err, prime_cutoff)


@_precise
def c2(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``4 L(1,chi)^2 E(2)``."""
    E = E_at_2(prime_cutoff)
    L = L1_chi()
    k = 4 * L * L
    return EulerProductValue(k * E.value, float(k) * E.tail_bound, prime_cutoff)


@_precise
def c2_display(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``16 pi^2/243 * prod_q (1 - q^-2) prod_p (1 - 3p^-2 + 2p^-3)``."""
    bare = _euler_product(prime_cutoff)
    k = 16 * mpmath.pi**2 / 243
    return EulerProductValue(k * bare.value, float(k) * bare.tail_bound, prime_cutoff)


@_precise
def C_display(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``4 pi^2/81 * prod_q (1 - q^-2) prod_p (1 - 3p^-2 + 2p^-3)``."""
    bare = _euler_product(prime_cutoff)
    k = 4 * mpmath.pi**2 / 81
    return EulerProductValue(k * bare.value, float(k) * bare.tail_bound, prime_cutoff)


@_precise
def c1(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``4 L (gamma L + L') E(2) + 4 L^2 E'(2)``."""
    E = E_at_2(prime_cutoff)
    Ep = Eprime_at_2(prime_cutoff)
    L, Lp = L1_chi(), Lprime1_chi()
    k1 = 4 * L * (mpmath.euler * L + Lp)
    k2 = 4 * L * L
    val = k1 * E.value + k2 * Ep.value
    err = abs(float(k1)) * E.tail_bound + float(k2) * Ep.tail_bound
    return EulerProductValue(val, err, prime_cutoff)


@_precise
def c1_over_c2_laurent(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """``c1/c2 = gamma + L'/L + E'(2)/E(2)`` (the product ``E(2)`` cancels)."""
    L, Lp = L1_chi(), Lprime1_chi()
    ld = _log_derivative(prime_cutoff)
    return EulerProductValue(mpmath.euler + Lp / L + ld.value, ld.tail_bound, prime_cutoff)


@_precise
def c1_over_c2_display(prime_cutoff: int = DEFAULT_CUTOFF) -> EulerProductValue:
    """The closed prime-sum expression printed for ``c1/c2`` (and ``D/C``)::

        2 gamma + log 2pi - 3 log(Gamma(1/3)/Gamma(2/3)) + 9/8 log 3
          + 9/4 sum_q log q/(q^2 - 1) + 27/4 sum_p (p+1) log p/(p^3 - 3p + 2)
    """
    sums = prime_sums(prime_cutoff)
    val = (
        2 * mpmath.euler
        + mpmath.log(2 * mpmath.pi)
        - 3 * log_gamma_ratio()
        + _mp(9) / 8 * mpmath.log(3)
        + _mp(9) / 4 * _mp(sums["laurent_q"])
        + _mp(27) / 4 * _mp(sums["display_p"])
    )
    # (p+1)/(p^3-3p+2) <= 2/p^2 and 1/(q^2-1) <= 2/q^2 for primes > 1000
    tail = _log_sum_tail(prime_cutoff, 27 / 4 * 2)
    return EulerProductValue(val, tail, prime_cutoff)


@dataclass
class ConstantsReport:
    c2: EulerProductValue
    c1: EulerProductValue
    C: EulerProductValue
    D_standard: EulerProductValue
    D_printed: EulerProductValue
    L1_chi: mpmath.mpf
    Lprime1_chi: mpmath.mpf
    gamma_euler: mpmath.mpf
    c2_display: EulerProductValue
    C_display: EulerProductValue
    c1_over_c2_laurent: EulerProductValue
    c1_over_c2_display: EulerProductValue
    deltas: dict[str, float] = field(default_factory=dict)

    def to_dict(self, digits: int = 20) -> dict:
        out: dict = {}
        for name, val in asdict(self).items():
            obj = getattr(self, name)
            if isinstance(obj, EulerProductValue):
                out[name] = obj.as_dict(digits)
            elif isinstance(obj, mpmath.mpf):
                out[name] = {"value": mpmath.nstr(obj, digits), "error_bound": 0.0}
        out["route_deltas"] = dict(self.deltas)
        return out

    def to_json(self, digits: int = 20) -> str:
        return json.dumps(self.to_dict(digits), sort_keys=True)


@_precise
def C_and_D(prime_cutoff: int = DEFAULT_CUTOFF) -> ConstantsReport:
    """All leading constants for the root-height count.

    ``C = (3/4) c2``.  ``D_standard = (3/4)(c1 - c2/2)`` uses the
    second-order residue term ``(c1/2 - c2/4) X``; ``D_printed`` is ``C`` times
    the printed ``c1/c2`` expression.
    """
    k2 = c2(prime_cutoff)
    k2d = c2_display(prime_cutoff)
    k1 = c1(prime_cutoff)
    Cd = C_display(prime_cutoff)
    r_lau = c1_over_c2_laurent(prime_cutoff)
    r_dis = c1_over_c2_display(prime_cutoff)
    three4 = _mp(3) / 4
    C = EulerProductValue(three4 * k2.value, 0.75 * k2.tail_bound, prime_cutoff)
    D_std = EulerProductValue(
        three4 * (k1.value - k2.value / 2),
        0.75 * (k1.tail_bound + k2.tail_bound / 2),
        prime_cutoff,
    )
    D_pap = EulerProductValue(
        Cd.value * r_dis.value,
        Cd.tail_bound * abs(float(r_dis.value)) + float(Cd.value) * r_dis.tail_bound,
        prime_cutoff,
    )
    deltas = {
        "c2_laurent_minus_display": float(k2.value - k2d.value),
        "c1_over_c2_laurent_minus_display": float(r_lau.value - r_dis.value),
        "c1_over_c2_laurent_minus_c1_div_c2": float(r_lau.value - k1.value / k2.value),
        "C_over_c2_minus_three_quarters": float(Cd.value / k2.value - three4),
        "D_printed_over_C_minus_display": float(D_pap.value / Cd.value - r_dis.value),
    }
    return ConstantsReport(
        c2=k2,
        c1=k1,
        C=C,
        D_standard=D_std,
        D_printed=D_pap,
        L1_chi=L1_chi(),
        Lprime1_chi=Lprime1_chi(),
        gamma_euler=+mpmath.euler,
        c2_display=k2d,
        C_display=Cd,
        c1_over_c2_laurent=r_lau,
        c1_over_c2_display=r_dis,
        deltas=deltas,
    )
