"""Exact expectations of the orbit counts N_k, and the counting behind them."""

from fractions import Fraction

from symgen import CycleType, expected_N, fixed_set_polynomial, p_two_regular, transitive_pair_count
from symgen.moments import (
    binom_entropy_bounds,
    common_fixed_point_disjoint_prob,
    count_invariant_equipartitions,
    fk_upper_bound,
    matchings_to_even,
)
from symgen import Permutation

T = CycleType.parse

# %% invariant k-sets of one permutation: coefficients of prod (1 + x^j)^c_j
t = T("1^3,2^2,5")
f = fixed_set_polynomial(t)
print(list(f.coefficients))
print("f_5 =", f[5], "<= bound", round(fk_upper_bound(t, 5), 3))

# %% transitive pairs of two fixed-point-free involutions
for k in range(1, 6):
    ty = CycleType.from_lengths([2] * k)
    print(k, p_two_regular(k), transitive_pair_count(ty, ty))

# %% the two matchings become one permutation with even cycles
print(matchings_to_even(Permutation.parse("(1 2)(3 4)"), Permutation.parse("(1 3)(2 4)")))

# %% E N_k for two classes; k = 1 is c_1 c_1' / n
rep = expected_N(T("1^100,9900"), T("1^100,9900"), 3)
for k, v in rep.terms:
    print("E N_%d = %s" % (k, v))

rep = expected_N(T("1^4,2^6,4^2"), T("1^2,3^6,4"), 6)
print(rep.to_json())

# %% chance of no common fixed point
print(float(common_fixed_point_disjoint_prob(100, 100, 10_000)))

# %% binomial coefficients against entropy
print(binom_entropy_bounds(100, 30))

# %% invariant equipartitions of one permutation
print(count_invariant_equipartitions(Permutation.parse("(1 2 3 4)(5 6 7 8)"), 2))
