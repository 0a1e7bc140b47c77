from __future__ import annotations

import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from abelia.arith import MemoryBudgetError
from abelia.dirichlet import (
    CoefficientTable,
    coefficient,
    coefficient_closed,
    default_cache_path,
    iter_coefficient_blocks,
    load_table,
    main_term,
    partial_sum,
    save_table,
    sieve_coefficients,
    streaming_partial_sums,
)


def _sympy_coefficient(n: int) -> int:
    # sum over d | n of 3^omega(P1(d)) * (-1)^Omega(P2(d)); zero when 3 | n
    if n % 3 == 0:
        return 0
    total = 0
    for d in sympy.divisors(n):
        pe = sympy.factorint(d)
        w1 = sum(1 for p in pe if p % 3 == 1)
        W2 = sum(e for p, e in pe.items() if p % 3 == 2)
        total += 3**w1 * (-1) ** W2
    return total


def test_coefficient_matches_divisor_sum_oracle():
    for n in range(1, 3001):
        assert coefficient(n) == _sympy_coefficient(n), n


@pytest.mark.parametrize(
    "n,d", [(1, 1), (2, 0), (3, 0), (4, 1), (7, 4), (13, 4), (49, 7), (91, 16), (343, 10)]
)
def test_coefficient_examples(n, d):
    assert coefficient(n) == d


@given(st.integers(min_value=1, max_value=10**15))
def test_closed_form_agrees(n):
    assert coefficient(n) == coefficient_closed(n)


@given(st.integers(min_value=1, max_value=10**12))
def test_vanishes_off_one_mod_three(n):
    if n % 3 != 1:
        assert coefficient_closed(n) == 0


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_multiplicative(m, n):
    if math.gcd(m, n) == 1:
        assert coefficient_closed(m * n) == coefficient_closed(m) * coefficient_closed(n)


def test_coefficient_rejects_nonpositive():
    with pytest.raises(ValueError):
        coefficient(0)


@pytest.fixture(scope="module")
def table():
    return sieve_coefficients(30000)


def test_sieve_matches_pointwise(table):
    for n in range(1, 30001):
        assert table[n] == coefficient_closed(n), n


@pytest.mark.parametrize("segment", [1, 7, 64, 1000, 1 << 21])
def test_sieve_segment_independent(table, segment):
    other = sieve_coefficients(30000, segment=segment)
    assert np.array_equal(table.values, other.values)


@pytest.mark.parametrize("workers", [1, 2, 8])
def test_sieve_thread_independent(table, workers):
    other = sieve_coefficients(30000, workers=workers, segment=999)
    assert np.array_equal(table.values, other.values)


@pytest.mark.parametrize("N", [1, 2, 3, 8, 9, 10])
def test_tiny_tables(N):
    t = sieve_coefficients(N)
    assert [t[n] for n in range(1, N + 1)] == [coefficient(n) for n in range(1, N + 1)]


def test_blocks_cover_range_in_order():
    los = [lo for lo, _ in iter_coefficient_blocks(1000, segment=300, workers=3)]
    assert los == [0, 300, 600, 900]


def test_table_is_read_only_and_bounds_checked(table):
    with pytest.raises(ValueError):
        table.values[5] = 1
    with pytest.raises(IndexError):
        table[30001]
    with pytest.raises(IndexError):
        table[-1]
    assert len(table) == 30000
    assert table.limit == 30000


def test_partial_sums(table):
    brute = 0
    for n in range(1, 30001):
        brute += coefficient_closed(n)
        if n in (1, 7, 100, 30000):
            assert partial_sum(table, n) == brute == table.partial_sum(n)
    with pytest.raises(ValueError):
        partial_sum(table, 30001)


def test_streaming_matches_table(table):
    marks = [10, 999, 12345, 30000]
    got = streaming_partial_sums(marks, segment=1000, workers=2)
    assert got == {X: partial_sum(table, X) for X in marks}


def test_known_partial_sum_at_ten_million():
    assert streaming_partial_sums([10**7]) == {10**7: 20137772}


def test_budget():
    with pytest.raises(MemoryBudgetError):
        sieve_coefficients(10**6, budget=10**5)


def test_cache_round_trip(tmp_path, table):
    path = tmp_path / "d.bin"
    save_table(table, path)
    back = load_table(path)
    assert back.limit == table.limit
    assert np.array_equal(back.values, table.values)
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"nope" * 8)
    with pytest.raises(ValueError):
        load_table(bad)


def test_default_cache_path(monkeypatch, tmp_path):
    monkeypatch.delenv("ABELIA_CACHE_DIR", raising=False)
    assert default_cache_path(10) is None
    monkeypatch.setenv("ABELIA_CACHE_DIR", str(tmp_path))
    assert default_cache_path(10).parent == tmp_path


def test_main_term_variants():
    X, c2, c1 = 1e6, 0.4, 0.9
    assert main_term(X, c2, c1, "printed") - main_term(X, c2, c1) == pytest.approx(c2 / 4 * X)
    with pytest.raises(ValueError):
        main_term(X, c2, c1, "other")


def test_coefficient_table_validates():
    with pytest.raises(ValueError):
        CoefficientTable(3, np.zeros(2, dtype=np.int32))
