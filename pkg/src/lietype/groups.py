"""The finite simple groups of Lie type: parameter validation, exact orders,
cyclotomic factorizations of d|T|, and the per-family constants (K, M, the
Lie rank, the exception pairs, and the largest-factor data for the
exceptional families)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import cyclotomic, numeric

CLASSICAL_FAMILIES = ("A", "2A", "B", "C", "D", "2D")
EXCEPTIONAL_FAMILIES = (
    "2B2",
    "3D4",
    "E6",
    "2E6",
    "E7",
    "E8",
    "F4",
    "2F4d",
    "G2",
    "2G2",
)
FAMILIES = CLASSICAL_FAMILIES + EXCEPTIONAL_FAMILIES + ("ALT",)


class InvalidGroup(ValueError):
    """The parameters violate the family's validity conditions."""


@dataclass(frozen=True)
class GroupId:
    """One simple group: family tag, rank n (classical families and ALT),
    field size q (everything except ALT). Invalid parameters are
    unconstructible. 2F4d denotes the derived group, so q = 2 is the
    Tits group."""

    family: str
    n: int | None = None
    q: int | None = None

    def __post_init__(self):
        _validate(self)

    @property
    def p(self) -> int:
        """Defining characteristic."""
        if self.family == "ALT":
            raise InvalidGroup("alternating groups have no defining characteristic")
        return numeric.prime_power(self.q).p

    def __str__(self):
        if self.family == "ALT":
            return f"ALT(n={self.n})"
        if self.family in CLASSICAL_FAMILIES:
            return f"{self.family}(n={self.n},q={self.q})"
        return f"{self.family}(q={self.q})"


def _validate(g: GroupId) -> None:
    f = g.family
    if f not in FAMILIES:
        raise InvalidGroup(f"unknown family {f!r}")
    if f == "ALT":
        if g.q is not None:
            raise InvalidGroup("ALT takes no field size q")
        if g.n is None or g.n < 5:
            raise InvalidGroup("ALT requires n >= 5")
        return
    if f in CLASSICAL_FAMILIES:
        if g.n is None:
            raise InvalidGroup(f"family {f} requires a rank n")
    elif g.n is not None:
        raise InvalidGroup(f"family {f} takes no rank parameter")
    if g.q is None:
        raise InvalidGroup(f"family {f} requires a field size q")
    try:
        pp = numeric.prime_power(g.q)
    except ValueError:
        raise InvalidGroup(f"q = {g.q} is not a prime power") from None
    n, q = g.n, g.q
    if f == "A":
        if n < 1 or (n, q) in ((1, 2), (1, 3)):
            raise InvalidGroup("A requires n >= 1 and (n,q) not in {(1,2),(1,3)}")
    elif f == "2A":
        if n < 2 or (n, q) == (2, 2):
            raise InvalidGroup("2A requires n >= 2 and (n,q) != (2,2)")
    elif f == "B":
        if n < 2 or (n, q) == (2, 2):
            raise InvalidGroup("B requires n >= 2 and (n,q) != (2,2)")
    elif f == "C":
        if n < 3 or q % 2 == 0:
            raise InvalidGroup("C requires n >= 3 and odd q")
    elif f in ("D", "2D"):
        if n < 4:
            raise InvalidGroup(f"{f} requires n >= 4")
    elif f == "2B2":
        if pp.p != 2 or pp.e < 3 or pp.e % 2 == 0:
            raise InvalidGroup("2B2 requires q = 2^(2m+1) with m >= 1")
    elif f == "2F4d":
        if pp.p != 2 or pp.e % 2 == 0:
            raise InvalidGroup("2F4d requires q = 2^(2m+1) with m >= 0")
    elif f == "G2":
        if q < 3:
            raise InvalidGroup("G2 requires q >= 3")
    elif f == "2G2":
        if pp.p != 3 or pp.e < 3 or pp.e % 2 == 0:
            raise InvalidGroup("2G2 requires q = 3^(2m+1) with m >= 1")
    # 3D4, E6, 2E6, E7, E8, F4: any prime power


def is_tits(g: GroupId) -> bool:
    """True for 2F4d at q = 2, whose order is |2F4(2)| / 2."""
    return g.family == "2F4d" and g.q == 2


@dataclass(frozen=True)
class OrderShape:
    """d|T| = q^e0 * prod(q^deg - sign) * prod(Phi_i(q) for i in phi_factors).

    sign +1 encodes q^deg - 1, sign -1 encodes q^deg + 1. phi_factors holds
    indices multiplied in directly, used where a classical-looking factor is
    already a product of cyclotomic values (q^8 + q^4 + 1 = Phi3 Phi6 Phi12).
    """

    e0: int
    factors: tuple[tuple[int, int], ...]
    phi_factors: tuple[int, ...] = ()
    d_desc: str = "1"


def order_shape(g: GroupId) -> OrderShape:
    """The standard order shape of d|T| (d = diagonal_d(g))."""
    f, n = g.family, g.n
    if f == "ALT":
        raise InvalidGroup("ALT has no Lie-type order shape")
    if f == "A":
        return OrderShape(
            n * (n + 1) // 2,
            tuple((i, 1) for i in range(2, n + 2)),
            d_desc="gcd(n+1, q-1)",
        )
    if f == "2A":
        return OrderShape(
            n * (n + 1) // 2,
            tuple((i, 1 if i % 2 == 0 else -1) for i in range(2, n + 2)),
            d_desc="gcd(n+1, q+1)",
        )
    if f in ("B", "C"):
        return OrderShape(
            n * n,
            tuple((2 * i, 1) for i in range(1, n + 1)),
            d_desc="gcd(2, q-1)",
        )
    if f == "D":
        return OrderShape(
            n * (n - 1),
            ((n, 1),) + tuple((2 * i, 1) for i in range(1, n)),
            d_desc="gcd(4, q^n - 1)",
        )
    if f == "2D":
        return OrderShape(
            n * (n - 1),
            ((n, -1),) + tuple((2 * i, 1) for i in range(1, n)),
            d_desc="gcd(4, q^n + 1)",
        )
    if f == "2B2":
        return OrderShape(2, ((2, -1), (1, 1)))
    if f == "3D4":
        return OrderShape(12, ((6, 1), (2, 1)), phi_factors=(3, 6, 12))
    if f == "G2":
        return OrderShape(6, ((6, 1), (2, 1)))
    if f == "F4":
        return OrderShape(24, ((2, 1), (6, 1), (8, 1), (12, 1)))
    if f == "E6":
        return OrderShape(
            36, tuple((i, 1) for i in (2, 5, 6, 8, 9, 12)), d_desc="gcd(3, q-1)"
        )
    if f == "2E6":
        return OrderShape(
            36,
            ((2, 1), (5, -1), (6, 1), (8, 1), (9, -1), (12, 1)),
            d_desc="gcd(3, q+1)",
        )
    if f == "E7":
        return OrderShape(
            63, tuple((i, 1) for i in (2, 6, 8, 10, 12, 14, 18)), d_desc="gcd(2, q-1)"
        )
    if f == "E8":
        return OrderShape(120, tuple((i, 1) for i in (2, 8, 12, 14, 18, 20, 24, 30)))
    if f == "2F4d":
        return OrderShape(12, ((6, -1), (4, 1), (3, -1), (1, 1)))
    assert f == "2G2"
    return OrderShape(3, ((3, -1), (1, 1)))


def diagonal_d(g: GroupId) -> int:
    """Number of diagonal outer automorphisms; d|T| is the shape product."""
    f, n, q = g.family, g.n, g.q
    if f == "ALT":
        raise InvalidGroup("ALT has no diagonal automorphism count")
    if f == "A":
        return math.gcd(n + 1, q - 1)
    if f == "2A":
        return math.gcd(n + 1, q + 1)
    if f in ("B", "C"):
        return math.gcd(2, q - 1)
    if f == "D":
        return math.gcd(4, q**n - 1)
    if f == "2D":
        return math.gcd(4, q**n + 1)
    if f == "E6":
        return math.gcd(3, q - 1)
    if f == "2E6":
        return math.gcd(3, q + 1)
    if f == "E7":
        return math.gcd(2, q - 1)
    return 1


@lru_cache(maxsize=None)
def order(g: GroupId) -> int:
    """Exact |T|. ALT(n) is n!/2; the Tits group is |2F4(2)| / 2."""
    if g.family == "ALT":
        return math.factorial(g.n) // 2
    shape = order_shape(g)
    q = g.q
    total = q**shape.e0
    for deg, sign in shape.factors:
        total *= q**deg - sign
    for i in shape.phi_factors:
        total *= cyclotomic.phi_eval(i, q)
    d = diagonal_d(g)
    assert total % d == 0
    total //= d
    if is_tits(g):
        assert total % 2 == 0
        total //= 2
    return total


@dataclass(frozen=True)
class CycloFactorization:
    """The data (d, e0, {i: e_i}) of d|T| = q^e0 * prod Phi_i(q)^e_i.

    exponents is sorted by index and holds only e_i > 0, so M (the largest
    index) is the last entry's index.
    """

    q: int
    d: int
    e0: int
    exponents: tuple[tuple[int, int], ...]

    @property
    def M(self) -> int:
        return self.exponents[-1][0]

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def value(self) -> int:
        """q^e0 * prod Phi_i(q)^e_i, which equals d * |T|."""
        out = self.q**self.e0
        for i, e in self.exponents:
            out *= cyclotomic.phi_eval(i, self.q) ** e
        return out

    def largest_factor(self) -> tuple[int, int, int]:
        """(index, exponent, value) of the largest factor Phi_i(q)^e_i."""
        best = None
        for i, e in self.exponents:
            v = cyclotomic.phi_eval(i, self.q) ** e
            if best is None or v > best[2]:
                best = (i, e, v)
        return best


@lru_cache(maxsize=None)
def cyclo_factorization(g: GroupId, ambient: bool = False) -> CycloFactorization:
    """Resolve the order shape into cyclotomic exponents.

    Each factor q^deg - 1 contributes every index k | deg; each q^deg + 1
    contributes the indices k | 2*deg with k not dividing deg. The result is
    verified against the exact order: value() == d * |T|.

    The Tits group is rejected unless ambient=True, because |2F4(2)'| itself
    is not a cyclotomic product. With ambient=True the factorization of
    |2F4(2)| = 2|T| is returned (value() == 2 * d * |T|); the structural
    quantities M and Q(T) are read off that ambient factorization.
    """
    if g.family == "ALT":
        raise InvalidGroup("ALT has no cyclotomic factorization")
    tits = is_tits(g)
    if tits and not ambient:
        raise InvalidGroup(
            "the Tits group order is not a cyclotomic product; "
            "pass ambient=True for the 2F4(2) factorization"
        )
    shape = order_shape(g)
    exps: dict[int, int] = {}
    for i in shape.phi_factors:
        exps[i] = exps.get(i, 0) + 1
    for deg, sign in shape.factors:
        if sign == 1:
            ks = numeric.divisors(deg)
        else:
            ks = [k for k in numeric.divisors(2 * deg) if deg % k != 0]
        for k in ks:
            exps[k] = exps.get(k, 0) + 1
    fact = CycloFactorization(g.q, diagonal_d(g), shape.e0, tuple(sorted(exps.items())))
    assert fact.value() == fact.d * order(g) * (2 if tits else 1)
    return fact


# Largest-factor data for the exceptional families:
# family -> (Q index, Q exponent, d0, q0), meaning Q(T) = Phi_{index}(q)^{exp}
# and Q(T)^K * d0 <= d * |T| for all q >= q0.
TABLE3 = {
    "2B2": (4, 1, 1, 8),
    "3D4": (3, 2, 1, 4),
    "E6": (3, 3, 3, 5),
    "2E6": (2, 6, 3, 7),
    "E7": (2, 7, 2, 9),
    "E8": (2, 8, 1, 7),
    "F4": (2, 4, 1, 7),
    "2F4d": (4, 2, 1, 8),
    "G2": (2, 2, 1, 4),
    "2G2": (6, 1, 1, 27),
}

# The five (family, q, r) triples where the main bound genuinely fails.
EXCEPTIONS = {
    "3D4": ((3, 13),),
    "E6": ((3, 13),),
    "E8": ((2, 31),),
    "F4": ((3, 13),),
    "G2": ((3, 13),),
}

_EXC_K = {
    "2B2": Fraction(2),
    "3D4": Fraction(6),
    "E6": Fraction(12),
    "2E6": Fraction(12),
    "E7": Fraction(18),
    "E8": Fraction(29),
    "F4": Fraction(12),
    "2F4d": Fraction(6),
    "G2": Fraction(6),
    "2G2": Fraction(7, 2),
}

_EXC_M = {
    "2B2": 4,
    "3D4": 12,
    "E6": 12,
    "2E6": 18,
    "E7": 18,
    "E8": 30,
    "F4": 12,
    "2F4d": 12,
    "G2": 6,
    "2G2": 6,
}

_EXC_RANK = {
    "2B2": 1,
    "3D4": 2,
    "E6": 6,
    "2E6": 4,
    "E7": 7,
    "E8": 8,
    "F4": 4,
    "2F4d": 2,
    "G2": 2,
    "2G2": 1,
}


@dataclass(frozen=True)
class TheoremRow:
    """Per-family constants: K, M, the Lie rank, the exception pairs (q, r),
    and for exceptional families the largest-factor data and bound domain."""

    K: Fraction
    M: int
    lie_rank: int
    exceptions: tuple[tuple[int, int], ...] = ()
    q_index: int | None = None
    q_exponent: int | None = None
    d0: int | None = None
    q0: int | None = None


def lie_rank(g: GroupId) -> int:
    """The (twisted) Lie rank."""
    f, n = g.family, g.n
    if f == "ALT":
        raise InvalidGroup("ALT has no Lie rank")
    if f == "A":
        return n
    if f == "2A":
        return (n + 1) // 2
    if f in ("B", "C", "D"):
        return n
    if f == "2D":
        return n - 1
    return _EXC_RANK[f]


def theorem_row(g: GroupId) -> TheoremRow:
    """The static constants for g's family (rank-dependent for classical)."""
    f, n = g.family, g.n
    if f == "ALT":
        raise InvalidGroup("ALT has no theorem constants")
    if f == "A":
        K, M = Fraction(n), n + 1
    elif f == "2A":
        K, M = Fraction(n, 2), 2 * (n + 1) if n % 2 == 0 else 2 * n
    elif f in ("B", "C"):
        K, M = Fraction(n), 2 * n
    elif f == "D":
        K, M = Fraction(n, 2), 2 * (n - 1)
    elif f == "2D":
        K, M = Fraction(n, 2), 2 * n
    else:
        K, M = _EXC_K[f], _EXC_M[f]
    q_index, q_exponent, d0, q0 = TABLE3.get(f, (None, None, None, None))
    return TheoremRow(
        K, M, lie_rank(g), EXCEPTIONS.get(f, ()), q_index, q_exponent, d0, q0
    )
