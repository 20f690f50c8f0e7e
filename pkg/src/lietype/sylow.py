"""Sylow subgroup orders, full Sylow spectra, largest/second-largest Sylow
identification, and good-contributor classification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import cyclotomic, groups, numeric


class TrivialSylow(ValueError):
    """Raised when r does not divide |T|; scans must not silently read 1."""


class BracketExhausted(ArithmeticError):
    """The dyadic bracketing of log2(9) could not separate a comparison."""


def sylow_order(g: groups.GroupId, r: int) -> int:
    """r^{v_r(|T|)}, by direct valuation of the exact order.

    For ALT(n) the valuation comes from the factorial formula
    v_r(n!) = sum floor(n/r^k), minus one for r = 2 (the index-2 quotient).
    """
    if not numeric.is_prime(r):
        raise ValueError(f"{r} is not prime")
    if g.family == "ALT":
        e = numeric.legendre_valuation(g.n, r) - (1 if r == 2 else 0)
    else:
        e = numeric.valuation(groups.order(g), r)
    if e == 0:
        raise TrivialSylow(f"{r} does not divide |{g}|")
    return r**e


def characteristic_sylow(g: groups.GroupId) -> int:
    """q^e0, the Sylow subgroup order for the defining characteristic."""
    if g.family == "ALT":
        raise groups.InvalidGroup("ALT has no defining characteristic")
    if groups.is_tits(g):
        return 2**11  # halving |2F4(2)| = 2^12 * ... removes one factor of 2
    return g.q ** groups.order_shape(g).e0


@dataclass(frozen=True)
class SylowSpectrum:
    """(prime, Sylow order) pairs sorted by strictly decreasing order.

    Distinct primes cannot share a perfect power, so the sort is strict and
    the labels p_1^{n_1} > p_2^{n_2} > ... are well defined.
    """

    group: groups.GroupId
    entries: tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def _phi_factorization(
    i: int, q: int, rho_budget: int = numeric.DEFAULT_RHO_BUDGET
) -> numeric.Factorization:
    return numeric.factorize(cyclotomic.phi_eval(i, q), rho_budget=rho_budget)


@lru_cache(maxsize=None)
def sylow_spectrum(
    g: groups.GroupId, rho_budget: int = numeric.DEFAULT_RHO_BUDGET
) -> SylowSpectrum:
    """The complete sorted Sylow spectrum of |T|.

    |T| is factored piece by piece (q^e0 and each Phi_i(q)^e_i separately;
    the pieces are far smaller than their product) and the results merged,
    then checked by reassembly against the exact order.
    """
    exps: dict[int, int] = {}
    if g.family == "ALT":
        for r in numeric.primes_upto(g.n):
            e = numeric.legendre_valuation(g.n, r) - (1 if r == 2 else 0)
            if e:
                exps[r] = e
    else:
        tits = groups.is_tits(g)
        fact = groups.cyclo_factorization(g, ambient=tits)
        pp = numeric.prime_power(g.q)
        exps[pp.p] = pp.e * fact.e0
        for i, e in fact.exponents:
            for r, v in _phi_factorization(i, g.q, rho_budget):
                exps[r] = exps.get(r, 0) + v * e
        for r, v in numeric.factorize(fact.d):
            exps[r] -= v
        if tits:
            exps[2] -= 1
        exps = {r: v for r, v in exps.items() if v}
    entries = tuple(
        sorted(((r, r**v) for r, v in exps.items()), key=lambda t: t[1], reverse=True)
    )
    total = 1
    for _, s in entries:
        total *= s
    assert total == groups.order(g)
    return SylowSpectrum(g, entries)


def largest_two(g: groups.GroupId) -> tuple[tuple[int, int], tuple[int, int]]:
    """The top two spectrum entries ((p1, p1^n1), (p2, p2^n2))."""
    spec = sylow_spectrum(g)
    if len(spec.entries) < 2:
        raise ArithmeticError(f"|{g}| has fewer than two prime divisors")
    return spec.entries[0], spec.entries[1]


def _bracket_le_log29(a: int, b: int, cap: int = 20) -> bool:
    """True iff a^2 < b^c with c = log2(9), by dyadic bracketing of c.

    With u = floor(2^t c) (read off the bit length of 9^(2^t)), either power
    comparison that separates a^(2^(t+1)) from b^u / b^(u+1) decides the
    transcendental one. Callers must rule out exact equality first, since
    equality never separates.
    """
    nine = 9  # 9^(2^t), maintained by squaring
    for t in range(cap + 1):
        u = nine.bit_length() - 1
        if numeric.pow_le(a, 2 << t, b, u):
            return True
        if not numeric.pow_le(a, 2 << t, b, u + 1):
            return False
        nine *= nine
    raise BracketExhausted(
        f"cannot separate log({a})/log({b}) from log(3)/log(2) at precision 2^-{cap}"
    )


def is_good_pair(top: int, other: int) -> tuple[bool, bool]:
    """Decide log(top)/log(other) <= log(3)/log(2) exactly.

    Returns (good, screened). The comparison is equivalent to
    top^2 <= other^{log2 9}; equality forces top = 3^k and other = 2^k (the
    boundary pair, which counts as good). screened=False means the integer
    screens were inconclusive and the dyadic bracketing decided it.
    """
    if top < other or other < 2:
        raise ValueError("top must be the largest of two Sylow orders")
    if top == other:
        return True, True
    if other & (other - 1) == 0:  # other = 2^k: the only possible equality
        k = other.bit_length() - 1
        if top == 3**k:
            return True, True
    # screens: other^3 <= other^{log2 9} < other^4 for other >= 2
    square = top * top
    if square <= other**3:
        return True, True
    if square >= other**4:
        return False, True
    return _bracket_le_log29(top, other), False


@dataclass(frozen=True)
class GoodContributorReport:
    """Primes whose Sylow order is within the log3/log2 window of the top.

    near_tie is diagnostic: some comparison fell through the integer screens
    and was resolved exactly by bracketing.
    """

    group: groups.GroupId
    contributors: tuple[tuple[int, bool], ...]  # (prime, is_characteristic)
    near_tie: bool


def good_contributors(g: groups.GroupId) -> GoodContributorReport:
    """Classify every spectrum prime against the log3/log2 threshold."""
    spec = sylow_spectrum(g)
    top = spec.entries[0][1]
    char = None if g.family == "ALT" else g.p
    contributors = []
    near = False
    for r, s in spec.entries:
        good, screened = is_good_pair(top, s)
        near = near or not screened
        if good:
            contributors.append((r, r == char))
    return GoodContributorReport(g, tuple(contributors), near)
