"""Permutations, cycle types and class sizes."""

import math

from symgen import CycleType, Permutation, class_size, conjugate, cycle_type_of, order_of, parity
from symgen.perm import all_cycle_types, class_size_lower_bound

# %% two ways to write the same permutation
p = Permutation.parse("(1 2 3)(4 5)")
q = Permutation.parse("2 3 1 5 4")
print(p, p == q, p.images)

# %% products run left to right: 1 -> 2 under p, then 2 -> 3 under (2 3)
s = Permutation.parse("(2 3)", 5)
print("p*s =", p * s, " image of 1:", (p * s)(1))

# %% cycle type, order, parity
t = cycle_type_of(p)
print(t, "order", order_of(p), parity(p))

# %% conjugation relabels the cycles and keeps the type
r = Permutation.parse("(1 5)", 5)
print(conjugate(p, r), cycle_type_of(conjugate(p, r)) == t)

# %% class sizes are exact integers; they add up to n!
n = 8
sizes = {str(t): class_size(t) for t in all_cycle_types(n)}
print(len(sizes), "classes in S_8, total", sum(sizes.values()), "=", math.factorial(n))
for name in ("1^8", "2^4", "8^1", "1^2,3^2"):
    print("  ", name, sizes[name])

# %% a class with c cycles has at least n!/n^c elements
big = CycleType.parse("1^3,2^10,17")
print(class_size(big) >= class_size_lower_bound(big), float(class_size(big) / class_size_lower_bound(big)))
