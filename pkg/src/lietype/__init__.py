"""Exact-arithmetic orders, cyclotomic factorizations, and Sylow subgroup
bounds for the finite simple groups of Lie type, with mechanical per-instance
verification of the classification and bound results the library encodes."""

from .cyclotomic import cyclotomic_poly, euler_product_bounds, phi_eval
from .groups import (
    CLASSICAL_FAMILIES,
    EXCEPTIONAL_FAMILIES,
    FAMILIES,
    CycloFactorization,
    GroupId,
    InvalidGroup,
    TheoremRow,
    cyclo_factorization,
    diagonal_d,
    lie_rank,
    order,
    order_shape,
    theorem_row,
)
from .numeric import (
    Factorization,
    FactorizationIncomplete,
    factorize,
    is_prime,
    pow_le,
)
from .sylow import (
    GoodContributorReport,
    SylowSpectrum,
    TrivialSylow,
    characteristic_sylow,
    good_contributors,
    largest_two,
    sylow_order,
    sylow_spectrum,
)
from .theorems import (
    AlternatingReport,
    BoundCheckResult,
    ScanReport,
    check_alternating,
    check_artin,
    check_buekenhout,
    check_factor_count,
    check_q_bound_classical,
    check_remark2,
    check_table3,
    check_theorem1,
    classify_largest_sylow,
    scan_exceptions,
)

__version__ = "0.1.0"
