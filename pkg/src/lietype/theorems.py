"""Mechanical per-instance verification: the main Sylow bound and its
exception list, the factor-count and largest-factor lemmas, the
largest-Sylow classification, the good-contributor theorem, and the
alternating-group facts. Every verdict is an exact integer comparison."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import cyclotomic, groups, numeric, sylow


@dataclass(frozen=True)
class BoundCheckResult:
    """One verdict of |R|^K <= |T|^E for (group, r), as exact integers.

    K = kNum/kDen is cleared of its denominator: lhs = |R|^kNum and
    rhs = |T|^(E*kDen), and holds <=> lhs <= rhs.
    """

    group: groups.GroupId
    r: int
    sylow_order: int
    E: int
    K: Fraction
    holds: bool
    lhs: int
    rhs: int


def check_theorem1(g: groups.GroupId, r: int) -> BoundCheckResult:
    """Exact verdict of |R| <= |T|^(E/K) with E = floor(log_r M) + 1."""
    if g.family == "ALT":
        raise groups.InvalidGroup("the bound concerns Lie-type groups")
    if r == g.p:
        raise ValueError(f"r = {r} is the defining characteristic of {g}")
    R = sylow.sylow_order(g, r)  # raises TrivialSylow if r does not divide |T|
    row = groups.theorem_row(g)
    E = numeric.floor_log(r, row.M) + 1
    lhs = R**row.K.numerator
    rhs = groups.order(g) ** (E * row.K.denominator)
    return BoundCheckResult(g, r, R, E, row.K, lhs <= rhs, lhs, rhs)


def check_factor_count(g: groups.GroupId, r: int) -> bool:
    """r divides at most floor(log_r(M/m)) + 1 of the factors Phi_i(q)^e_i
    (m the order of q mod r), and |R| <= Q(T)^(1 + floor(log_r M))."""
    if g.family == "ALT":
        raise groups.InvalidGroup("the lemma concerns Lie-type groups")
    if r == g.p:
        raise ValueError(f"r = {r} is the defining characteristic of {g}")
    R = sylow.sylow_order(g, r)
    fact = groups.cyclo_factorization(g, ambient=groups.is_tits(g))
    m = numeric.mult_order(g.q, r)
    M = fact.M
    count = sum(1 for i, _ in fact.exponents if cyclotomic.phi_eval(i, g.q) % r == 0)
    if count > numeric.floor_log(r, M // m) + 1:
        return False
    q_value = fact.largest_factor()[2]
    return numeric.pow_le(R, 1, q_value, 1 + numeric.floor_log(r, M))


def check_q_bound_classical(g: groups.GroupId) -> bool:
    """Q(T)^n <= |T|^a with a = 1 for A, B, C and a = 2 for 2A, D, 2D."""
    if g.family not in groups.CLASSICAL_FAMILIES:
        raise ValueError(f"{g} is not classical")
    q_value = groups.cyclo_factorization(g).largest_factor()[2]
    a = 1 if g.family in ("A", "B", "C") else 2
    return numeric.pow_le(q_value, g.n, groups.order(g), a)


def check_table3(g: groups.GroupId) -> bool:
    """(a) the largest factor Phi_i(q)^e_i sits at the tabulated
    (index, exponent); (b) for q >= q0, Q(T)^K * d0 <= d * |T| exactly."""
    row = groups.theorem_row(g)
    if row.q0 is None:
        raise ValueError(f"{g} is not exceptional")
    fact = groups.cyclo_factorization(g, ambient=groups.is_tits(g))
    exps = fact.as_dict()
    if exps.get(row.q_index) != row.q_exponent:
        return False
    q_value = cyclotomic.phi_eval(row.q_index, g.q) ** row.q_exponent
    if any(
        cyclotomic.phi_eval(i, g.q) ** e > q_value for i, e in fact.exponents
    ):
        return False
    if g.q < row.q0:
        return True
    den = row.K.denominator
    lhs = q_value**row.K.numerator * row.d0**den
    rhs = (groups.diagonal_d(g) * groups.order(g)) ** den
    return lhs <= rhs


def check_remark2(g: groups.GroupId, r: int) -> bool:
    """2K >= l and M <= 4(l+1), plus the rank-only form of the bound:
    |R|^l <= |T|^(2 * floor(log_r(4(l+1)r))).

    The five tabulated exception triples are outside the bound's hypotheses
    and are rejected here; scans skip them.
    """
    row = groups.theorem_row(g)
    if (g.q, r) in row.exceptions:
        raise ValueError(f"({g}, r={r}) is a listed exception")
    ell = row.lie_rank
    if 2 * row.K < ell or row.M > 4 * (ell + 1):
        return False
    R = sylow.sylow_order(g, r)
    exponent = 2 * numeric.floor_log(r, 4 * (ell + 1) * r)
    return numeric.pow_le(R, ell, groups.order(g), exponent)


def _is_mersenne_prime(v: int) -> bool:
    return v > 1 and (v + 1) & v == 0 and numeric.is_prime(v)


def _is_fermat_prime(v: int) -> bool:
    return v > 2 and (v - 1) & (v - 2) == 0 and numeric.is_prime(v)


def classify_largest_sylow(g: groups.GroupId) -> tuple[int, bool, str]:
    """(top prime, top == characteristic, category).

    The category names which bullet of the largest-Sylow classification
    covers the group: MersennePSL2, FermatPSL2, PSL28, PSU33, PSU42, or
    Generic (largest Sylow is the characteristic one).
    """
    if g.family == "ALT":
        raise groups.InvalidGroup("the classification concerns Lie-type groups")
    top_prime = sylow.sylow_spectrum(g).entries[0][0]
    q = g.q
    if g.family == "A" and g.n == 1:
        if q == 8:
            category = "PSL28"
        elif _is_mersenne_prime(q):
            category = "MersennePSL2"
        elif _is_fermat_prime(q + 1):
            category = "FermatPSL2"
        else:
            category = "Generic"
    elif g.family == "2A" and g.n == 2 and q == 3:
        category = "PSU33"
    elif g.family == "2A" and g.n == 3 and q == 2:
        category = "PSU42"
    else:
        category = "Generic"
    return top_prime, top_prime == g.p, category


_CATEGORY_TOP = {"PSL28": 3, "PSU33": 2, "PSU42": 3, "MersennePSL2": 2}


def check_artin(g: groups.GroupId) -> bool:
    """The largest Sylow subgroup is the characteristic one, except on the
    known bullet list, where the listed prime must win instead."""
    top, is_char, category = classify_largest_sylow(g)
    if category == "Generic":
        return is_char
    if is_char:
        return False
    if category == "FermatPSL2":
        return top == g.q + 1
    return top == _CATEGORY_TOP[category]


def check_buekenhout(g: groups.GroupId) -> bool:
    """At most one good contributor besides the characteristic, and any such
    prime is at most 5. Types A1, A2 and 2A2 are outside the theorem."""
    if g.family == "ALT":
        raise groups.InvalidGroup("the theorem concerns Lie-type groups")
    if buekenhout_exempt(g):
        raise ValueError(f"type {g} is outside the good-contributor theorem")
    report = sylow.good_contributors(g)
    others = [r for r, is_char in report.contributors if not is_char]
    return len(others) <= 1 and all(r <= 5 for r in others)


def buekenhout_exempt(g: groups.GroupId) -> bool:
    """True for the low-rank linear and unitary types the theorem leaves open."""
    return (g.family == "A" and g.n <= 2) or (g.family == "2A" and g.n == 2)


EXPECTED_PAIR_IRREGULARS = (5, 6, 7, 9)


@dataclass(frozen=True)
class AlternatingReport:
    """Scan results over ALT(n): where the top two Sylow primes differ from
    (2, 3), and where p1^(1000*n1) <= (n!/2)^363 fails.

    The 363/1000 exponent is the rationalized form of the 0.363 constant;
    the scan records the facts and callers judge them (the bound does fail
    for a few small n)."""

    n_min: int
    n_max: int
    pair_irregulars: tuple[int, ...]
    bound_violations: tuple[int, ...]


def check_alternating(n_min: int = 5, n_max: int = 2000) -> AlternatingReport:
    """Scan ALT(n) for n_min <= n <= n_max; see AlternatingReport."""
    if n_min < 5 or n_max < n_min:
        raise ValueError(f"bad range [{n_min}, {n_max}]")
    pair_irregulars = []
    bound_violations = []
    half_factorial = math.factorial(n_min) // 2
    for n in range(n_min, n_max + 1):
        if n > n_min:
            half_factorial *= n
        (p1, _), (p2, _) = sylow.largest_two(groups.GroupId("ALT", n))
        if (p1, p2) != (2, 3):
            pair_irregulars.append(n)
        n1 = numeric.legendre_valuation(n, p1) - (1 if p1 == 2 else 0)
        if not numeric.pow_le(p1, 1000 * n1, half_factorial, 363):
            bound_violations.append(n)
    return AlternatingReport(
        n_min, n_max, tuple(pair_irregulars), tuple(bound_violations)
    )


def grid_groups(
    families: Sequence[str],
    n_max: int = 12,
    q_max: int = 32,
    q_min: int = 2,
) -> list[groups.GroupId]:
    """All valid groups of the given families with rank <= n_max (classical)
    and q_min <= q <= q_max; invalid parameter combinations are skipped."""
    out = []
    qs = [q for q in numeric.prime_powers(q_max) if q >= q_min]
    for f in families:
        if f == "ALT":
            continue
        ranks = range(1, n_max + 1) if f in groups.CLASSICAL_FAMILIES else (None,)
        for n in ranks:
            for q in qs:
                try:
                    out.append(groups.GroupId(f, n, q))
                except groups.InvalidGroup:
                    pass
    return out


def below_q0_groups(
    families: Sequence[str] = groups.EXCEPTIONAL_FAMILIES,
) -> list[groups.GroupId]:
    """Every valid exceptional group with q below its family's q0."""
    out = []
    for f in families:
        if f not in groups.TABLE3:
            continue
        q0 = groups.TABLE3[f][3]
        for q in numeric.prime_powers(q0 - 1):
            try:
                out.append(groups.GroupId(f, None, q))
            except groups.InvalidGroup:
                pass
    return out


def expected_exceptions(
    grid: Sequence[groups.GroupId],
) -> set[tuple[str, int, int]]:
    """The tabulated exception triples (family, q, r) present in the grid."""
    out = set()
    for g in grid:
        for q_exc, r_exc in groups.theorem_row(g).exceptions:
            if q_exc == g.q:
                out.add((g.family, g.q, r_exc))
    return out


@dataclass(frozen=True)
class ScanReport:
    """Violations of the main bound over a grid, against the expected set.

    verdict is "match" when the violation triples equal the expected ones
    exactly (missing an expected exception is as fatal as a new violation),
    "mismatch" otherwise, and "incomplete" if any cell failed to factor.
    """

    description: str
    checked: int
    violations: tuple[BoundCheckResult, ...]
    expected: tuple[tuple[str, int, int], ...]
    errors: tuple[str, ...]
    verdict: str


def scan_exceptions(
    families: Sequence[str],
    n_max: int = 12,
    q_max: int = 32,
    *,
    q_min: int = 2,
    below_q0: bool = False,
    rho_budget: int = numeric.DEFAULT_RHO_BUDGET,
) -> ScanReport:
    """Run check_theorem1 on every group in the grid and every prime r != p,
    and compare the violations against the tabulated exceptions."""
    if below_q0:
        grid = below_q0_groups([f for f in families if f in groups.TABLE3])
        description = f"families={','.join(families)} q<q0"
    else:
        grid = grid_groups(families, n_max, q_max, q_min)
        description = f"families={','.join(families)} n<={n_max} {q_min}<=q<={q_max}"
    violations = []
    errors = []
    checked = 0
    for g in grid:
        try:
            spectrum = sylow.sylow_spectrum(g, rho_budget=rho_budget)
        except numeric.FactorizationIncomplete as exc:
            errors.append(f"{g}: {exc}")
            continue
        for r, _ in spectrum.entries:
            if r == g.p:
                continue
            result = check_theorem1(g, r)
            checked += 1
            if not result.holds:
                violations.append(result)
    found = {(v.group.family, v.group.q, v.r) for v in violations}
    expected = expected_exceptions(grid)
    if errors:
        verdict = "incomplete"
    else:
        verdict = "match" if found == expected else "mismatch"
    violations.sort(key=lambda v: (v.group.family, v.group.n or 0, v.group.q, v.r))
    return ScanReport(
        description,
        checked,
        tuple(violations),
        tuple(sorted(expected)),
        tuple(errors),
        verdict,
    )
