"""lattes-lab: Lattes maps of elliptic curves over Q and their permutation
behavior on the projective line over prime fields.

The package builds the maps L_k with L_k(x(P)) = x([k]P) from division
polynomials, decides whether a reduced map permutes P^1(F_p) both by brute
force and by the trace criterion gcd((p+1)^2 - a_p^2, k) = 1, carries the
imaginary-quadratic and Eisenstein residue-symbol machinery behind the CM
analysis, and reproduces the bundled reference tables, including the
obstructed families where rational torsion does not explain the failure of
exceptionality.
"""

from .eisenstein import (
    SymbolValue,
    cubic_reciprocity_check,
    e_primary_associate,
    ed_count_check,
    eis,
    lemma_ab_witness,
    power_residue_symbol,
    primary_associate,
    sextic_reciprocity_check,
    symbol_tower_check,
)
from .elliptic import (
    CATALOG,
    CATALOG_BY_NAME,
    CatalogEntry,
    Curve,
    add_points,
    cm_model,
    count_points,
    division_poly,
    format_curve,
    lattes_map,
    negate_point,
    noncm_family,
    parse_curve,
    quadratic_twist,
    random_point,
    scalar_mul,
    torsion_classify_Ed,
    torsion_x_rational,
)
from .exceptionality import (
    ExceptionalityReport,
    PermutationVerdict,
    ScanRow,
    TraceCache,
    TraceRecord,
    exceptionality_report,
    frobenius_scan,
    is_cubic_residue,
    permutes,
    scan,
    strategy_primes,
    trace_record,
    twist_product_check,
    verify_d11_obstruction,
    verify_noncm_counterexample,
)
from .galois import (
    Mat2Zm,
    SubgroupSpec,
    cm_density_full,
    cm_density_subgroup,
    diag_witness,
    empirical_density,
    frobenius_congruence_check,
    in_Cm,
    k2_verdict,
)
from .intmath import (
    CongruenceCondition,
    is_prime,
    kronecker,
    primes_in_congruence,
    primes_upto,
    sqrt_mod,
)
from .polyrat import GF, INFINITY, Poly, QQ, RatMap, format_ratmap, rational_roots
from .quadorder import (
    QuadInt,
    QuadOrder,
    congruent,
    cornacchia,
    deuring_consistency,
    find_prime_element,
    format_quadint,
    parse_quadint,
    prime_above,
    quad_order,
    splitting_type,
)
from .tables import TABLE_IDS, check_all_tables, check_table

__version__ = "0.1.0"
