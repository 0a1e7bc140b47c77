from __future__ import annotations

import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from abelia.cubic import FAMILY_CLASSES, GaloisClass, TraceOneCubic, discriminant, render_cubic
from abelia.enumeration import family_polynomials

G = GaloisClass
BOX = 200


def _oracle_classes(box: int) -> dict[tuple[int, int], GaloisClass]:
    """Classify every (a, b) in the box from integer-root multiplicities,
    found by evaluating f and f' on all integers up to the Cauchy bound."""
    a = np.arange(-box, box + 1, dtype=np.int64)[:, None]
    b = np.arange(-box, box + 1, dtype=np.int64)[None, :]
    bound = 2 + box
    out = {}
    roots_seen = np.zeros((a.size, b.size), dtype=np.int64)
    double = np.zeros_like(roots_seen)
    triple = np.zeros_like(roots_seen)
    for t in range(-bound, bound + 1):
        f = t**3 - t**2 + a * t + b
        df = 3 * t * t - 2 * t + a
        root = f == 0
        roots_seen += root
        double |= root & (df == 0)
        triple |= root & (df == 0) & (6 * t - 2 == 0)
    disc = -18 * a * b + 4 * b + a * a - 4 * a**3 - 27 * b * b
    disc = np.broadcast_to(disc, roots_seen.shape)
    root = np.sqrt(np.maximum(disc, 0).astype(np.float64)).round().astype(np.int64)
    square = (disc >= 0) & (root * root == disc)
    for i, av in enumerate(range(-box, box + 1)):
        for j, bv in enumerate(range(-box, box + 1)):
            k = roots_seen[i, j]
            if triple[i, j]:
                c = G.SPLIT_TRIPLE
            elif double[i, j]:
                c = G.SPLIT_DOUBLE
            elif k == 3:
                c = G.SPLIT_DISTINCT
            elif k == 1:
                c = G.LINEAR_TIMES_IRREDUCIBLE_QUADRATIC
            elif square[i, j]:
                c = G.C3_IRREDUCIBLE
            else:
                c = G.S3_IRREDUCIBLE
            out[(av, bv)] = c
    return out


@pytest.fixture(scope="module")
def oracle():
    return _oracle_classes(BOX)


def test_classify_matches_root_count_oracle(oracle):
    bad = [
        (key, c) for key, c in oracle.items() if TraceOneCubic(*key).classify() is not c
    ]
    assert bad == []


@given(st.integers(-400, 400), st.integers(-10**4, 10**4))
def test_classify_matches_sympy(a, b):
    t = sympy.Symbol("t")
    poly = sympy.Poly(t**3 - t**2 + a * t + b, t)
    _, factors = poly.factor_list()
    degrees = sorted(f.degree() for f, e in factors for _ in range(e))
    c = TraceOneCubic(a, b).classify()
    if degrees == [3]:
        assert c in (G.C3_IRREDUCIBLE, G.S3_IRREDUCIBLE)
        assert (c is G.C3_IRREDUCIBLE) == sympy.sqrt(poly.discriminant()).is_Integer
    elif degrees == [1, 2]:
        assert c is G.LINEAR_TIMES_IRREDUCIBLE_QUADRATIC
    else:
        distinct = len(factors)
        assert c is (G.SPLIT_DISTINCT if distinct == 3 else G.SPLIT_DOUBLE)


@given(st.integers(-10**6, 10**6), st.integers(-10**9, 10**9))
def test_discriminant_matches_sympy(a, b):
    t = sympy.Symbol("t")
    assert discriminant(a, b) == sympy.discriminant(t**3 - t**2 + a * t + b, t)


@given(st.integers(-10**4, 10**4), st.integers(-10**6, 10**6))
def test_no_triple_root_and_family_iff_square(a, b):
    f = TraceOneCubic(a, b)
    assert f.classify() is not G.SPLIT_TRIPLE
    d = f.discriminant()
    square = d >= 0 and math.isqrt(d) ** 2 == d
    assert f.in_family() == square


@given(st.integers(-5000, 5000), st.integers(-10**6, 10**6))
def test_integer_roots_are_roots(a, b):
    f = TraceOneCubic(a, b)
    for r in f.integer_roots():
        assert f(r) == 0


@pytest.mark.parametrize(
    "a,b,cls,weight",
    [
        (-2, 1, G.C3_IRREDUCIBLE, 2),
        (-2, 0, G.SPLIT_DISTINCT, 2),
        (-1, 1, G.SPLIT_DOUBLE, 1),
        (0, 0, G.SPLIT_DOUBLE, 1),
        (-4, -1, G.C3_IRREDUCIBLE, 2),
        (-5, -3, G.SPLIT_DOUBLE, 1),
    ],
)
def test_examples(a, b, cls, weight):
    f = TraceOneCubic(a, b)
    assert f.classify() is cls
    assert f.classify() in FAMILY_CLASSES
    assert f.weight() == weight


@pytest.mark.parametrize("a,b", [(0, 1), (1, 1), (-3, 1)])
def test_weight_outside_family_raises(a, b):
    f = TraceOneCubic(a, b)
    assert not f.in_family()
    with pytest.raises(ValueError):
        f.weight()


def test_heights():
    f = TraceOneCubic(-2, 1)
    assert f.toric_height_squared() == 7
    assert f.toric_height() == pytest.approx(math.sqrt(7))
    assert f.root_height() == pytest.approx(math.sqrt(2))
    assert TraceOneCubic(-1, 27).root_height() == pytest.approx(3)
    with pytest.raises(ValueError):
        TraceOneCubic(1, 0).toric_height_squared()


def test_root_to_toric_quotient_envelope():
    for a in range(-33, -400, -1):
        for f in family_polynomials(a):
            q = math.sqrt(3) * f.root_height() / math.sqrt(1 - 3 * a)
            assert 0.5 < q < 1.5, (f, q)


def test_render():
    assert render_cubic(-2, 1) == "t^3 - t^2 - 2t + 1"
    assert render_cubic(0, 0) == "t^3 - t^2"
    assert render_cubic(-1, 1) == "t^3 - t^2 - t + 1"
    assert render_cubic(3, -5) == "t^3 - t^2 + 3t - 5"
    assert str(TraceOneCubic(-196, -704)) == "t^3 - t^2 - 196t - 704"
