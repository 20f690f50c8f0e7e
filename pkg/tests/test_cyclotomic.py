"""Tests for cyclotomic polynomials, their values, and the Euler bounds."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lietype import cyclotomic, numeric
from lietype.cyclotomic import (
    MEMO_CAP,
    IntPolynomial,
    cyclotomic_poly,
    euler_product_bounds,
    phi_eval,
)

_X = sympy.Symbol("x")


def _sympy_coeffs(i: int) -> tuple[int, ...]:
    poly = sympy.Poly(sympy.cyclotomic_poly(i, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def test_polynomials_match_sympy():
    for i in range(1, 131):
        assert cyclotomic_poly(i).coeffs == _sympy_coeffs(i), i


def test_degree_is_totient():
    for i in (1, 2, 12, 30, 105, 128, 210, 255):
        assert cyclotomic_poly(i).degree == sympy.totient(i), i


def test_index_105_has_coefficient_minus_two():
    # the first index with a coefficient outside {-1, 0, 1}
    coeffs = cyclotomic_poly(105).coeffs
    assert coeffs[7] == -2
    assert min(coeffs) == -2 and max(coeffs) == 1
    for i in range(1, 105):
        assert all(abs(c) <= 1 for c in cyclotomic_poly(i).coeffs), i


def test_phi_eval_matches_polynomial_and_sympy():
    for i in (1, 2, 3, 4, 6, 12, 30, 59, 105, 210):
        for q in (2, 3, 9, 32):
            value = phi_eval(i, q)
            assert value == cyclotomic_poly(i)(q)
            assert value == int(sympy.cyclotomic_poly(i, q))
            assert value > 0


def test_phi_eval_rejects_small_base():
    with pytest.raises(ValueError):
        phi_eval(3, 1)


@given(st.integers(1, 300), st.integers(2, 50))
@settings(max_examples=120, deadline=None)
def test_product_identities(i, q):
    minus = 1
    for k in numeric.divisors(i):
        minus *= phi_eval(k, q)
    assert minus == q**i - 1
    plus = 1
    for k in numeric.divisors(2 * i):
        if i % k != 0:
            plus *= phi_eval(k, q)
    assert plus == q**i + 1


def test_memo_cap_keeps_large_indices_uncached():
    big = MEMO_CAP + 44
    assert cyclotomic_poly(big).coeffs == _sympy_coeffs(big)
    assert big not in cyclotomic._poly_cache
    cyclotomic_poly(12)
    assert 12 in cyclotomic._poly_cache


def test_intpolynomial_contract():
    with pytest.raises(ValueError):
        IntPolynomial(())
    with pytest.raises(ValueError):
        IntPolynomial((1, 0))
    poly = IntPolynomial((1, 2, 3))  # 3x^2 + 2x + 1
    assert poly.degree == 2
    assert poly(10) == 321


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8), st.integers(-50, 50))
def test_intpolynomial_evaluates_like_power_sum(coeffs, x):
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    poly = IntPolynomial(tuple(coeffs))
    assert poly(x) == sum(c * x**k for k, c in enumerate(coeffs))


# Euler product prod_{i>=1} (1 - 2^-i) to 30 digits, from its standard
# decimal expansion 0.288788095086602421278899721929...
_EULER_2_LO = Fraction(288788095086602421278899721929, 10**30)
_EULER_2_HI = _EULER_2_LO + Fraction(1, 10**30)


def test_euler_bounds_contain_known_constant():
    lo, hi = euler_product_bounds(2, 40)
    assert lo < _EULER_2_LO < _EULER_2_HI < hi
    assert hi - lo < Fraction(1, 10**12)


def test_euler_bounds_tighten_with_more_terms():
    for q in range(2, 10):
        lo40, hi40 = euler_product_bounds(q, 40)
        lo90, hi90 = euler_product_bounds(q, 90)
        assert lo40 < lo90 < hi90 < hi40
        assert 0 < lo40 < hi40 < 1


def test_euler_bounds_rejects_bad_arguments():
    with pytest.raises(ValueError):
        euler_product_bounds(1, 40)
    with pytest.raises(ValueError):
        euler_product_bounds(2, 0)
