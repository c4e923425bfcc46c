"""Random pairs of permutations: what do they generate?

Exact combinatorics of orbit counts, samplers for classes and orders, a
certificate-based group classifier and a seeded experiment harness.
"""

from .groups import (
    GroupClassification,
    OracleLimitExceeded,
    OrbitCensus,
    Verdict,
    classify,
    exact_order_oracle,
    find_block_system,
    is_primitive,
    is_transitive,
    orbit_census,
)
from .moments import (
    ExactLimitExceeded,
    FixedSetPolynomial,
    MomentReport,
    binom_entropy_bounds,
    common_fixed_point_disjoint_prob,
    common_two_cycle_prob,
    count_invariant_equipartitions,
    entropy_h,
    even_to_matchings,
    expected_N,
    expected_Nk_exact,
    fixed_set_polynomial,
    fk_upper_bound,
    matchings_to_even,
    p_two_regular,
    transitive_pair_count,
)
from .order_stats import OrderMProfile, check_generation_hypotheses, class_ratio, order_m_profile
from .perm import (
    CycleType,
    Permutation,
    PermutationError,
    class_size,
    compose,
    conjugate,
    cycle_type_of,
    inverse,
    order_of,
    parity,
)
from .samplers import EmptyOrder, RandomSource, enumerate_types_of_order, sample_class, sample_order_m, sample_uniform

__version__ = "0.1.0"
