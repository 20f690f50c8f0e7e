"""Tests for the exact integer arithmetic helpers."""

import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lietype import numeric
from lietype.numeric import (
    Factorization,
    FactorizationIncomplete,
    PrimePower,
    divisors,
    factorize,
    floor_log,
    is_prime,
    legendre_valuation,
    mobius,
    mult_order,
    pow_le,
    prime_power,
    prime_powers,
    primes_upto,
    valuation,
)

# a semiprime of two 11-digit primes: trial division cannot touch it and a
# tiny rho budget cannot split it
HARD_SEMIPRIME = 10000000019 * 10000000033


def test_primes_upto_matches_sympy():
    assert primes_upto(1) == []
    assert primes_upto(2) == [2]
    assert primes_upto(3000) == list(sympy.primerange(2, 3001))


def test_prime_powers_values():
    assert prime_powers(1) == []
    assert prime_powers(10) == [2, 3, 4, 5, 7, 8, 9]
    expected = [n for n in range(2, 200) if len(sympy.factorint(n)) == 1]
    assert prime_powers(199) == expected


def test_is_prime_small_range():
    for n in range(2, 4000):
        assert is_prime(n) == sympy.isprime(n), n


def test_is_prime_strong_pseudoprime_traps():
    # composites that fool single-base strong probable-prime tests
    for n in (
        2047,
        1373653,
        25326001,
        3215031751,
        3474749660383,
        341550071728321,
        318665857834031151167461,
    ):
        assert not is_prime(n), n
    for n in (2**89 - 1, 2**127 - 1, 10**18 + 9, 2305843009213693951):
        assert is_prime(n), n


@given(st.integers(min_value=2, max_value=10**7))
@settings(max_examples=200)
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(min_value=1, max_value=10**13))
@settings(max_examples=150, deadline=None)
def test_factorize_reassembles(n):
    fact = factorize(n)
    assert fact.value() == n
    primes = [p for p, _ in fact]
    assert primes == sorted(set(primes))


def test_factorize_matches_sympy():
    for n in (2**59 - 1, 600851475143, 97**3 * 89**2, 2**4 * 3**5 * 10**10 + 1):
        assert factorize(n).as_dict() == sympy.factorint(n), n


def test_factorize_budget_exhaustion():
    with pytest.raises(FactorizationIncomplete) as info:
        factorize(HARD_SEMIPRIME, rho_budget=2)
    assert info.value.n == HARD_SEMIPRIME
    assert info.value.cofactor == HARD_SEMIPRIME
    assert info.value.budget == 2
    # the default budget splits it easily
    assert factorize(HARD_SEMIPRIME).as_dict() == {10000000019: 1, 10000000033: 1}


def test_factorization_validation():
    with pytest.raises(ValueError):
        Factorization(((4, 1),))  # not prime
    with pytest.raises(ValueError):
        Factorization(((3, 0),))  # exponent < 1
    with pytest.raises(ValueError):
        Factorization(((5, 1), (3, 1)))  # out of order
    fact = Factorization.from_dict({3: 2, 2: 5})
    assert fact.entries == ((2, 5), (3, 2))
    assert fact.as_dict() == {2: 5, 3: 2}
    assert list(fact) == [(2, 5), (3, 2)]
    assert fact.value() == 288


def test_valuation():
    assert valuation(2**10 * 3, 2) == 10
    assert valuation(7, 5) == 0
    assert valuation(1, 2) == 0
    with pytest.raises(ValueError):
        valuation(0, 2)
    with pytest.raises(ValueError):
        valuation(12, 4)


@given(st.sampled_from([2, 3, 5, 13]), st.integers(0, 30), st.integers(1, 10**6))
def test_valuation_recovers_exponent(r, k, m):
    if m % r == 0:
        m += 1
    assert valuation(r**k * m, r) == k


def test_mult_order_matches_sympy():
    for r in primes_upto(500):
        for q in (2, 3, 5, 10, 32):
            if q % r == 0:
                continue
            assert mult_order(q, r) == sympy.n_order(q, r), (q, r)
    with pytest.raises(ValueError):
        mult_order(6, 3)
    with pytest.raises(ValueError):
        mult_order(2, 9)


@given(st.integers(2, 50), st.integers(1, 10**30))
def test_floor_log_window(r, m):
    k = floor_log(r, m)
    assert r**k <= m < r ** (k + 1)


def test_floor_log_examples():
    assert floor_log(2, 1) == 0
    assert floor_log(13, 6) == 0
    assert floor_log(3, 9) == 2
    with pytest.raises(ValueError):
        floor_log(1, 5)
    with pytest.raises(ValueError):
        floor_log(2, 0)


def test_mobius_and_divisors_match_sympy():
    for n in range(1, 400):
        assert mobius(n) == sympy.mobius(n), n
        assert divisors(n) == sympy.divisors(n), n


def test_legendre_valuation_equals_factorial_valuation():
    for n in (1, 2, 5, 10, 37, 100, 256):
        for r in (2, 3, 5, 7, 11):
            assert legendre_valuation(n, r) == valuation(math.factorial(n), r), (n, r)


@given(
    st.integers(1, 10**6),
    st.integers(0, 60),
    st.integers(1, 10**6),
    st.integers(0, 60),
)
def test_pow_le_matches_direct_powering(a, x, b, y):
    assert pow_le(a, x, b, y) == (a**x <= b**y)


def test_pow_le_equalities_and_huge_exponents():
    assert pow_le(4, 3, 8, 2)  # 64 <= 64
    assert pow_le(2, 10, 32, 2)  # 1024 <= 1024
    assert not pow_le(2, 10, 31, 2)
    # bit-length windows decide these without forming the powers
    assert pow_le(2, 10**9, 3, 10**9)
    assert not pow_le(3, 10**9, 2, 10**9)
    assert pow_le(1, 10**9, 2, 1)
    assert pow_le(2, 0, 3, 0)


def test_prime_power():
    assert prime_power(8) == PrimePower(2, 3)
    assert prime_power(27).value == 27
    assert prime_power(2) == PrimePower(2, 1)
    for bad in (1, 0, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power(bad)
    with pytest.raises(ValueError):
        PrimePower(4, 1)
    with pytest.raises(ValueError):
        PrimePower(2, 0)
