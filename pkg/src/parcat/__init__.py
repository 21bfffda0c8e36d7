"""Parabolic Catalan combinatorics: R-tuples, keys, scanning tableaux and
the tableau polynomials that compare Demazure sets with row-bounded sets."""

from .census import (
    Limits,
    VerificationReport,
    class_interval,
    generate,
    parabolic_catalan,
    total_parabolic_catalan,
    verify,
)
from .errors import DomainError, InternalError
from .maps import (
    Chain,
    RPermutation,
    ceiling_of,
    chain_of,
    core,
    floor_of,
    is_r312_avoiding,
    is_rightmost_clump_deleting,
    min_lift,
    perm_of_chain,
    pi_of,
    platform,
    r_projection,
    rank_tuple,
)
from .polynomials import (
    SparsePoly,
    demazure_poly,
    gv_determinant,
    is_nonpermutable,
    key_poly_dd,
    row_bound_sum,
)
from .rtuples import (
    CriticalList,
    RSet,
    RTuple,
    classify,
    critical_list,
    parse_critical_list,
    parse_rtuple,
    tuple_from_critical,
)
from .scanning import demazure_set, scan
from .tableaux import Partition, Tableau, enumerate_tableaux, key_of, row_bound_max, row_end_max

__all__ = [
    "Chain",
    "CriticalList",
    "DomainError",
    "InternalError",
    "Limits",
    "Partition",
    "RPermutation",
    "RSet",
    "RTuple",
    "SparsePoly",
    "Tableau",
    "VerificationReport",
    "ceiling_of",
    "chain_of",
    "class_interval",
    "classify",
    "core",
    "critical_list",
    "demazure_poly",
    "demazure_set",
    "enumerate_tableaux",
    "floor_of",
    "generate",
    "gv_determinant",
    "is_nonpermutable",
    "is_r312_avoiding",
    "is_rightmost_clump_deleting",
    "key_of",
    "key_poly_dd",
    "min_lift",
    "parabolic_catalan",
    "parse_critical_list",
    "parse_rtuple",
    "perm_of_chain",
    "pi_of",
    "platform",
    "r_projection",
    "rank_tuple",
    "row_bound_max",
    "row_bound_sum",
    "row_end_max",
    "scan",
    "total_parabolic_catalan",
    "tuple_from_critical",
    "verify",
]
