from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from abelia.arith import (
    Factorization,
    MemoryBudgetError,
    big_omega,
    divisors,
    exact_sqrt,
    factor_rational,
    factorize,
    factorize_with_table,
    format_factored,
    is_probable_prime,
    iter_spf_segments,
    omega,
    primes_up_to,
    residue_part,
    snapped_floor,
    spf_sieve,
)


@given(st.integers(min_value=1, max_value=2**63 - 1))
def test_factorize_matches_sympy(n):
    assert dict(factorize(n).factors) == sympy.factorint(n)


@pytest.mark.parametrize(
    "n",
    [1, 2, 97, 2**62, 3**39, 1000003 * 999999937, 4294967291 * 2147483647, 2**63 - 25],
)
def test_factorize_hard_cases(n):
    assert dict(factorize(n).factors) == sympy.factorint(n)


@pytest.mark.parametrize("n", [0, -5, 2**63])
def test_factorize_rejects(n):
    with pytest.raises(ValueError):
        factorize(n)


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 2), (5, 1)))
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    assert Factorization.from_dict({3: 1, 2: 2}) == Factorization(12, ((2, 2), (3, 1)))
    assert factorize(360).exponent(3) == 2 and factorize(360).exponent(7) == 0


@given(st.integers(min_value=1, max_value=10**12))
def test_small_functions_match_sympy(n):
    f = factorize(n)
    pe = sympy.factorint(n)
    assert omega(f) == len(pe)
    assert big_omega(f) == sum(pe.values())
    for j in (1, 2):
        assert residue_part(f, j) == math.prod(p**e for p, e in pe.items() if p % 3 == j)


@given(st.integers(min_value=1, max_value=10**9))
def test_divisors_match_sympy(n):
    assert divisors(factorize(n)) == sympy.divisors(n)


def test_residue_part_rejects_class():
    with pytest.raises(ValueError):
        residue_part(factorize(10), 0)


def test_primes_up_to():
    assert primes_up_to(1).size == 0
    assert primes_up_to(10**5).tolist() == list(sympy.primerange(2, 10**5 + 1))


def test_spf_sieve_against_sympy():
    spf = spf_sieve(20000)
    assert spf[0] == 0 and spf[1] == 0
    for n in range(2, 20001):
        assert spf[n] == min(sympy.factorint(n))


def test_spf_segments_independent_of_segment_size():
    whole = spf_sieve(100000)
    pieces = np.concatenate([seg for _, seg in iter_spf_segments(100000, segment=777)])
    assert np.array_equal(whole, pieces)


def test_spf_budget():
    with pytest.raises(MemoryBudgetError):
        spf_sieve(10**6, budget=10**5)


@given(st.integers(min_value=1, max_value=10**5))
def test_factorize_with_table(n):
    spf = spf_sieve(10**5)
    assert factorize_with_table(n, spf) == factorize(n)


def test_factorize_with_table_falls_back_beyond_table():
    spf = spf_sieve(100)
    assert factorize_with_table(10**6 + 3, spf) == factorize(10**6 + 3)


@given(st.integers(min_value=0, max_value=10**30))
def test_exact_sqrt(n):
    r = exact_sqrt(n)
    if r is None:
        assert math.isqrt(n) ** 2 != n
    else:
        assert r * r == n
    assert exact_sqrt(-n - 1) is None


def test_is_probable_prime_agrees_with_sympy():
    for n in range(-3, 5000):
        assert is_probable_prime(n) == sympy.isprime(n)
    assert is_probable_prime(2**61 - 1)
    # strong pseudoprime to several small bases
    assert not is_probable_prime(3215031751)


def test_snapped_floor():
    assert snapped_floor(math.sqrt(7) ** 2) == 7
    assert snapped_floor(6.99) == 6
    assert snapped_floor(8.0) == 8
    assert snapped_floor(-0.5) == -1


def test_factor_rational_and_format():
    assert factor_rational(0) == (0, {})
    assert factor_rational(Fraction(-20, 7)) == (-1, {2: 2, 5: 1, 7: -1})
    assert format_factored(Fraction(-20, 7)) == "-1 * 2^2 * 5 * 7^-1"
    assert format_factored(1) == "1"
    assert format_factored(-1) == "-1"
