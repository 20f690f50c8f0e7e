"""Cyclotomic polynomials, their exact integer values, and the two product
identities q^i - 1 = prod_{k|i} Phi_k(q) and q^i + 1 = prod_{k|2i, k!|i} Phi_k(q),
plus rigorous rational bounds for the Euler product prod (1 - q^-i)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import numeric

# Polynomials with index <= MEMO_CAP are cached; larger ones are still
# computed correctly, just not retained.
MEMO_CAP = 256


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; coefficients lowest degree first, leading nonzero."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide num by monic den, demanding a zero remainder."""
    assert den[-1] == 1
    work = list(num)
    dn = len(den) - 1
    out = [0] * (len(work) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = work[i + dn]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                work[i + j] -= c * dj
    if any(work[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


_poly_cache: dict[int, IntPolynomial] = {}


def cyclotomic_poly(i: int) -> IntPolynomial:
    """The i-th cyclotomic polynomial.

    Built by exact division of x^i - 1 by the product of the proper-divisor
    polynomials; staying in integer arithmetic makes the construction
    self-checking (a nonzero remainder raises).
    """
    if i < 1:
        raise ValueError(f"cyclotomic index {i} < 1")
    cached = _poly_cache.get(i)
    if cached is not None:
        return cached
    num = [-1] + [0] * (i - 1) + [1]  # x^i - 1
    den = [1]
    for d in numeric.divisors(i):
        if d < i:
            den = _poly_mul(den, list(cyclotomic_poly(d).coeffs))
    poly = IntPolynomial(tuple(_poly_div_exact(num, den)))
    if i <= MEMO_CAP:
        _poly_cache[i] = poly
    return poly


_eval_cache: dict[tuple[int, int], int] = {}


def phi_eval(i: int, q: int) -> int:
    """Exact value of the i-th cyclotomic polynomial at q >= 2."""
    if q < 2:
        raise ValueError(f"phi_eval wants q >= 2, got {q}")
    key = (i, q)
    out = _eval_cache.get(key)
    if out is None:
        out = cyclotomic_poly(i)(q)
        assert out > 0
        _eval_cache[key] = out
    return out


def euler_product_bounds(q: int, n_terms: int) -> tuple[Fraction, Fraction]:
    """Exact rationals L <= prod_{i>=1} (1 - q^-i) <= U.

    U is the partial product through n_terms (the partials decrease), and L
    multiplies U by the tail bound 1 - sum_{i>n_terms} q^-i
    = 1 - q^-n_terms/(q-1).
    """
    if q < 2 or n_terms < 1:
        raise ValueError(f"euler_product_bounds({q}, {n_terms}) undefined")
    upper = Fraction(1)
    for i in range(1, n_terms + 1):
        upper *= 1 - Fraction(1, q**i)
    lower = upper * (1 - Fraction(1, q**n_terms * (q - 1)))
    if lower <= 0:
        raise ValueError("tail bound degenerate; increase n_terms")
    return lower, upper
