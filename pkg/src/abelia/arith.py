"""Integer factorization, divisors and the small multiplicative functions
the counting formulas are assembled from.

Point queries go through :func:`factorize` (trial division, then a
deterministic Miller-Rabin test and Pollard-Brent splitting).  Batch jobs
share a smallest-prime-factor table built by :func:`spf_sieve`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

import numpy as np

__all__ = [
    "Factorization",
    "MemoryBudgetError",
    "factorize",
    "factorize_with_table",
    "residue_part",
    "omega",
    "big_omega",
    "divisors",
    "spf_sieve",
    "iter_spf_segments",
    "primes_up_to",
    "is_square",
    "snapped_floor",
    "factor_rational",
    "format_factored",
    "exact_sqrt",
    "is_probable_prime",
    "DEFAULT_MEMORY_BUDGET",
]

# bytes; a full 10**8 table of 4-byte entries fits
DEFAULT_MEMORY_BUDGET = 512 * 2**20

_TRIAL_LIMIT = 1000
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class MemoryBudgetError(ValueError):
    """A table would not fit in the configured memory budget."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Factorization needs n >= 1, got {self.n}")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"bad factor list {self.factors!r}")
            prod *= p**e
            last = p
        if prod != self.n:
            raise ValueError(f"factors {self.factors!r} do not multiply to {self.n}")

    @classmethod
    def from_dict(cls, pe: dict[int, int]) -> Factorization:
        factors = tuple(sorted((p, e) for p, e in pe.items() if e > 0))
        n = 1
        for p, e in factors:
            n *= p**e
        return cls(n, factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases.

    Deterministic for ``n < 3.3 * 10**24``, which covers every input this
    package produces.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    # returns a nontrivial factor of the odd composite n
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Prime factorization of ``1 <= n < 2**63``."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n >= 2**63:
        raise ValueError(f"factorize is limited to n < 2**63, got {n}")
    out: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    # 6k +- 1 wheel
    p, step = 7, 4
    limit = min(_TRIAL_LIMIT, math.isqrt(m))
    while p <= limit:
        if m % p == 0:
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
            limit = min(_TRIAL_LIMIT, math.isqrt(m))
        p += step
        step = 6 - step
    if m > 1:
        # seeded so results and timings are reproducible
        _split(m, out, random.Random(m))
    return Factorization.from_dict(out)


def factorize_with_table(n: int, spf: np.ndarray) -> Factorization:
    """Factor ``n`` by repeated lookups in a smallest-prime-factor table."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n >= len(spf):
        return factorize(n)
    out: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return Factorization(
        math.prod(p**e for p, e in out.items()), tuple(sorted(out.items()))
    )


def residue_part(f: Factorization, j: int) -> int:
    """Largest divisor of ``f.n`` built only from primes ``p = j (mod 3)``."""
    if j not in (1, 2):
        raise ValueError(f"residue class must be 1 or 2, got {j}")
    return math.prod(p**e for p, e in f.factors if p % 3 == j)


def omega(f: Factorization) -> int:
    return len(f.factors)


def big_omega(f: Factorization) -> int:
    return sum(e for _, e in f.factors)


def divisors(f: Factorization) -> list[int]:
    primes = [p for p, _ in f.factors]
    out = []
    for exps in product(*(range(e + 1) for _, e in f.factors)):
        d = 1
        for p, k in zip(primes, exps):
            d *= p**k
        out.append(d)
    out.sort()
    return out


def _check_budget(limit: int, itemsize: int, budget: int) -> None:
    need = (limit + 1) * itemsize
    if need > budget:
        raise MemoryBudgetError(
            f"table to {limit} needs {need} bytes, budget is {budget} bytes"
        )


def primes_up_to(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an ``int64`` array (plain Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def iter_spf_segments(
    limit: int, segment: int = 1 << 22
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(lo, table)`` where ``table[i]`` is the least prime factor of
    ``lo + i``, covering ``[0, limit]`` in order.

    Entries for 0 and 1 are 0.  Only one segment is alive at a time.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    base = primes_up_to(math.isqrt(limit))
    lo = 0
    while lo <= limit:
        hi = min(lo + segment, limit + 1)
        spf = np.zeros(hi - lo, dtype=np.uint32)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            if start >= hi:
                continue
            view = spf[start - lo :: p]
            view[view == 0] = p
        idx = np.flatnonzero(spf == 0)
        spf[idx] = (idx + lo).astype(np.uint32)
        if lo == 0:
            spf[: min(2, hi)] = 0
        yield lo, spf
        lo = hi


def spf_sieve(limit: int, budget: int = DEFAULT_MEMORY_BUDGET) -> np.ndarray:
    """Smallest-prime-factor table indexed ``0..limit`` (``uint32``)."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    _check_budget(limit, 4, budget)
    out = np.empty(limit + 1, dtype=np.uint32)
    for lo, seg in iter_spf_segments(limit):
        out[lo : lo + len(seg)] = seg
    return out


def snapped_floor(x: float, rel: float = 1e-9) -> int:
    """``floor(x)``, except values within ``rel`` (relative) of an integer
    snap to it, so ``sqrt(7)**2`` counts as 7."""
    near = round(x)
    if abs(x - near) <= rel * max(1.0, abs(x)):
        return int(near)
    return math.floor(x)


def factor_rational(x: Fraction | int) -> tuple[int, dict[int, int]]:
    """``(sign, {p: e})`` with ``x = sign * prod p^e``; ``e`` may be negative.

    Zero is ``(0, {})``.
    """
    x = Fraction(x)
    if x == 0:
        return 0, {}
    out = dict(factorize(x.numerator if x > 0 else -x.numerator).factors)
    for p, e in factorize(x.denominator):
        out[p] = -e
    return (1 if x > 0 else -1), dict(sorted(out.items()))


def format_factored(x: Fraction | int) -> str:
    """``-20/7`` becomes ``"-1 * 2^2 * 5 * 7^-1"``; zero is ``"0"``."""
    sign, pe = factor_rational(x)
    if sign == 0:
        return "0"
    parts = ["-1"] if sign < 0 else []
    parts += [str(p) if e == 1 else f"{p}^{e}" for p, e in pe.items()]
    return " * ".join(parts) if parts else "1"


def exact_sqrt(n: int) -> int | None:
    """Integer square root of ``n`` if ``n`` is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_square(n: int) -> bool:
    return exact_sqrt(n) is not None
