from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from abelia.acceptance import REFERENCE_TABLE
from abelia.arith import factor_rational
from abelia.cubic import TraceOneCubic, discriminant
from abelia.cyclo import (
    CycloElement,
    QuadraticData,
    elements_of,
    format_fraction,
    parse_fraction,
    quadratic_of,
    rows_at_height,
    table_row,
)
from abelia.enumeration import family_polynomials

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**4)


@pytest.mark.parametrize("row", REFERENCE_TABLE, ids=lambda r: f"{r[0]},{r[1]}")
def test_reference_rows(row):
    a, b, g, df, dg, h2 = row
    got = table_row(TraceOneCubic(a, b))
    assert str(got.quadratic) == g
    assert factor_rational(got.disc_cubic) == df
    assert factor_rational(got.disc_quadratic) == dg
    assert got.height_squared == h2


def test_named_rows():
    assert str(quadratic_of(-2, 0)) == "t^2 - 20/7 t + 7"
    dg = quadratic_of(-190, -800).discriminant
    assert dg == Fraction(-(2**2) * 3**5 * 5**2 * 7**2 * 13**2, 571**2)


def test_reference_rows_are_family_members_at_their_height():
    for a, b, *_, h2 in REFERENCE_TABLE:
        cubics = [r.cubic for r in rows_at_height(h2)]
        assert TraceOneCubic(a, b) in cubics


def test_elements_of_example():
    assert elements_of(TraceOneCubic(-2, 1)) == [CycloElement(1, 3), CycloElement(-2, -3)]
    assert CycloElement(1, 3).norm == 7 and CycloElement(1, 3).trace == -1


def test_elements_of_double_root():
    els = elements_of(TraceOneCubic(-1, 1))
    assert len(els) == 1
    assert els[0].to_cubic() == (-1, 1)


def test_elements_of_rejects_non_family():
    with pytest.raises(ValueError):
        elements_of(TraceOneCubic(0, 1))


@given(st.integers(-700, 0), st.data())
def test_round_trip_and_counts(a, data):
    fs = family_polynomials(a)
    assume(fs)
    f = data.draw(st.sampled_from(fs))
    els = elements_of(f)
    assert len(els) == f.weight()
    assert all(e.to_cubic() == (f.a, f.b) for e in els)
    assert all(e.norm == 1 - 3 * a for e in els)


@given(st.integers(-10**4, 10**4), st.integers(-10**6, 10**6))
def test_discriminant_relation(a, b):
    g = quadratic_of(a, b)
    assert g.discriminant * g.norm**2 == -27 * discriminant(a, b)


@given(rationals, rationals)
def test_integrality_equivalence(u, v):
    assume(u or v)
    e = CycloElement(u, v)
    a, b = e.to_cubic()
    assert e.is_integral_image() == (a.denominator == 1 and b.denominator == 1)


@given(st.integers(-300, 300), st.integers(-300, 300))
def test_integer_elements_hit_integers_when_norm_is_one_mod_three(u, v):
    e = CycloElement(u, v)
    assume(e.norm % 3 == 1)
    a, b = e.to_cubic()
    if e.is_integral_image():
        f = TraceOneCubic(int(a), int(b))
        assert f.in_family()
        assert e in elements_of(f)


@given(rationals, rationals, rationals, rationals)
def test_norm_multiplicative(u, v, x, y):
    p, q = CycloElement(u, v), CycloElement(x, y)
    assert (p * q).norm == p.norm * q.norm


@given(rationals, rationals)
def test_conjugate(u, v):
    e = CycloElement(u, v)
    prod = e * e.conjugate()
    assert prod == CycloElement(e.norm, 0)
    assert e.conjugate().trace == e.trace


def test_zero_element_rejected():
    with pytest.raises(ValueError):
        CycloElement(0, 0).to_cubic()
    with pytest.raises(ValueError):
        CycloElement(0, 0).height()


def test_quadratic_of_rejects_degenerate_norm():
    with pytest.raises(ValueError):
        quadratic_of(Fraction(1, 3), 0)


def test_printed_convention_flips_b():
    e = CycloElement(1, 3)
    assert e.to_cubic("printed") == (-2, -1)
    assert discriminant(-2, -1) == -31
    g = quadratic_of(-2, -1, convention="printed")
    assert (g.trace, g.norm) == (-1, 7)
    with pytest.raises(ValueError):
        e.to_cubic("other")


def test_quadratic_rendering():
    assert str(QuadraticData(Fraction(-1), Fraction(7))) == "t^2 + t + 7"
    assert str(QuadraticData(Fraction(2), Fraction(1))) == "t^2 - 2 t + 1"
    assert str(QuadraticData(Fraction(0), Fraction(-3))) == "t^2 - 3"


@given(rationals)
def test_fraction_text_round_trip(x):
    assert parse_fraction(format_fraction(x)) == x
    assert format_fraction(Fraction(-20, 7)) == "-20/7"


def test_rows_at_height_empty_off_class():
    assert rows_at_height(8) == []
    assert len(rows_at_height(589)) == 8
