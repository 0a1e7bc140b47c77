"""Dirichlet coefficients of the height zeta function.

``d_n`` is the weighted number of family polynomials with ``1 - 3a = n``.
Three routes compute it: a divisor sum (:func:`coefficient`), the
prime-power closed form (:func:`coefficient_closed`) and a segmented
sieve over ``1..N`` (:func:`sieve_coefficients`).  The divisor-sum route
is kept deliberately naive so it can serve as the oracle for the other two.
"""

from __future__ import annotations

import logging
import math
import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator

import numpy as np

from .arith import (
    DEFAULT_MEMORY_BUDGET,
    Factorization,
    MemoryBudgetError,
    factorize,
    primes_up_to,
)

__all__ = [
    "CoefficientTable",
    "coefficient",
    "coefficient_closed",
    "sieve_coefficients",
    "iter_coefficient_blocks",
    "partial_sum",
    "streaming_partial_sums",
    "main_term",
    "save_table",
    "load_table",
    "default_cache_path",
    "CACHE_MAGIC",
]

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"ABELIA1"
_DEFAULT_SEGMENT = 1 << 21


def coefficient(n: int, factorization: Factorization | None = None) -> int:
    """``sum_{d | n} 3^omega(P1(d)) (-1)^Omega(P2(d))``, and 0 when ``3 | n``.

    The sum is taken over every divisor individually.  Pass a precomputed
    ``factorization`` to skip factoring.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n % 3 == 0:
        logger.debug("d_%d := 0 (multiples of 3 have no Euler factor)", n)
        return 0
    f = factorization if factorization is not None else factorize(n)
    classes = [p % 3 for p, _ in f.factors]
    total = 0
    for exps in product(*(range(e + 1) for _, e in f.factors)):
        w1 = 0  # distinct primes = 1 (mod 3) in d
        w2 = 0  # primes = 2 (mod 3) in d, with multiplicity
        for cls, k in zip(classes, exps):
            if k == 0:
                continue
            if cls == 1:
                w1 += 1
            else:
                w2 += k
        total += 3**w1 * (-1) ** w2
    return total


def coefficient_closed(n: int, factorization: Factorization | None = None) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n % 3 == 0:
        return 0
    f = factorization if factorization is not None else factorize(n)
    out = 1
    for p, e in f.factors:
        if p % 3 == 2:
            if e % 2:
                return 0
        else:
            out *= 1 + 3 * e
    return out


@dataclass(frozen=True)
class CoefficientTable:
    """``values[n] = d_n`` for ``1 <= n <= limit``; ``values[0]`` is 0."""

    limit: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if len(self.values) != self.limit + 1:
            raise ValueError("values must have length limit + 1")
        self.values.setflags(write=False)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"n = {n} outside 1..{self.limit}")
        return int(self.values[n])

    def __len__(self) -> int:
        return self.limit

    def partial_sum(self, X: int) -> int:
        return partial_sum(self, X)


def _block(lo: int, hi: int, small_primes: np.ndarray) -> np.ndarray:
    # d_n for lo <= n < hi via the closed form; small_primes covers sqrt(hi)
    size = hi - lo
    rest = np.arange(lo, hi, dtype=np.int64)
    d = np.ones(size, dtype=np.int32)
    if lo == 0:
        d[0] = 0
        rest[0] = 1
    for p in small_primes:
        p = int(p)
        if p * p >= hi:
            break
        first = -(-lo // p) * p
        if first >= hi:
            continue
        start = first - lo
        if p == 3:
            d[start::3] = 0
            rest[start::3] = 1
            continue
        exps = np.zeros((size - start + p - 1) // p, dtype=np.int32)
        sub = rest[start::p]
        sub //= p
        exps += 1
        pk = p * p
        while pk < hi:
            first_k = -(-lo // pk) * pk
            if first_k >= hi:
                break
            # offset of multiples of p^k inside the multiples-of-p view
            off = (first_k - first) // p
            step = pk // p
            exps[off::step] += 1
            sub[off::step] //= p
            pk *= p
        rest[start::p] = sub
        if p % 3 == 1:
            d[start::p] *= 1 + 3 * exps
        else:
            d[start::p] *= (exps + 1) % 2
    # leftover cofactor is 1 or a single prime above sqrt(hi)
    mod = rest % 3
    d[mod != 1] = 0
    d[(mod == 1) & (rest > 1)] *= 4
    return d


def iter_coefficient_blocks(
    N: int, segment: int = _DEFAULT_SEGMENT, workers: int = 1
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(lo, block)`` with ``block[i] = d_{lo+i}``, covering ``0..N``.

    Blocks come out in ascending order whatever ``workers`` is.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    small = primes_up_to(math.isqrt(N) + 1)
    bounds = [(lo, min(lo + segment, N + 1)) for lo in range(0, N + 1, segment)]
    if workers <= 1:
        for lo, hi in bounds:
            yield lo, _block(lo, hi, small)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # bounded look-ahead keeps memory at ~2*workers blocks
        pending: list = []
        it = iter(bounds)
        for lo, hi in it:
            pending.append((lo, pool.submit(_block, lo, hi, small)))
            if len(pending) >= 2 * workers:
                lo0, fut = pending.pop(0)
                yield lo0, fut.result()
        for lo0, fut in pending:
            yield lo0, fut.result()


def sieve_coefficients(
    N: int,
    workers: int = 1,
    budget: int = DEFAULT_MEMORY_BUDGET,
    segment: int = _DEFAULT_SEGMENT,
) -> CoefficientTable:
    """Table of ``d_1..d_N`` (``int32``) from the closed form, sieved by segment."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    need = (N + 1) * 4
    if need > budget:
        raise MemoryBudgetError(
            f"coefficient table to {N} needs {need} bytes, budget is {budget} bytes"
        )
    values = np.empty(N + 1, dtype=np.int32)
    for lo, block in iter_coefficient_blocks(N, segment=segment, workers=workers):
        values[lo : lo + len(block)] = block
    return CoefficientTable(N, values)


def partial_sum(table: CoefficientTable, X: int) -> int:
    """``sum_{n <= X} d_n``."""
    if X > table.limit:
        raise ValueError(f"X = {X} exceeds table limit {table.limit}")
    if X < 1:
        return 0
    return int(table.values[: X + 1].sum(dtype=np.int64))


def streaming_partial_sums(
    checkpoints: list[int], segment: int = _DEFAULT_SEGMENT, workers: int = 1
) -> dict[int, int]:
    """Partial sums at each checkpoint without holding the full table."""
    marks = sorted(set(int(x) for x in checkpoints))
    if not marks or marks[0] < 1:
        raise ValueError("checkpoints must be positive")
    out: dict[int, int] = {}
    running = 0
    i = 0
    for lo, block in iter_coefficient_blocks(marks[-1], segment, workers):
        hi = lo + len(block)
        while i < len(marks) and marks[i] < hi:
            out[marks[i]] = running + int(
                block[: marks[i] - lo + 1].sum(dtype=np.int64)
            )
            i += 1
        running += int(block.sum(dtype=np.int64))
    return out


def main_term(X: float, c2: float, c1: float, variant: str = "standard") -> float:
    """Two-term approximation to ``sum_{n <= X} d_n``.

    ``variant="standard"`` is the residue of ``Z(z) X^z / z`` at the double
    pole: ``(c2/4) X log X + (c1/2 - c2/4) X``.  ``variant="printed"`` drops the
    ``-c2/4`` correction: ``(c2/4) X log X + (c1/2) X``.
    """
    lead = c2 / 4 * X * math.log(X)
    if variant == "standard":
        return lead + (c1 / 2 - c2 / 4) * X
    if variant == "printed":
        return lead + c1 / 2 * X
    raise ValueError(f"unknown variant {variant!r}")


def save_table(table: CoefficientTable, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", table.limit))
        fh.write(table.values[1:].astype("<u4").tobytes())


def load_table(path: str | os.PathLike) -> CoefficientTable:
    with open(path, "rb") as fh:
        magic = fh.read(len(CACHE_MAGIC))
        if magic != CACHE_MAGIC:
            raise ValueError(f"{path}: not a coefficient cache (magic {magic!r})")
        (N,) = struct.unpack("<Q", fh.read(8))
        raw = np.frombuffer(fh.read(4 * N), dtype="<u4")
    if len(raw) != N:
        raise ValueError(f"{path}: truncated, expected {N} values, got {len(raw)}")
    values = np.zeros(N + 1, dtype=np.int32)
    values[1:] = raw
    return CoefficientTable(N, values)


def default_cache_path(N: int) -> Path | None:
    root = os.environ.get("ABELIA_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"coefficients_{N}.bin"
