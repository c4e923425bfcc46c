"""Sampling: uniform, inside a class, as a conjugate, and of a given order."""

from collections import Counter

from symgen import CycleType, RandomSource, cycle_type_of, enumerate_types_of_order, sample_class
from symgen.samplers import sample_conjugate, sample_order_m, sample_uniform

rng = RandomSource(seed=2024)

# %% same (seed, stream) -> same draw; this is what makes experiments reproducible
print(sample_uniform(10, RandomSource(1, 5)) == sample_uniform(10, RandomSource(1, 5)))

# %% a uniform element of a class
t = CycleType.parse("1^2,2^2,4")
x = sample_class(t, rng)
print(x, cycle_type_of(x) == t)

# %% a random conjugate of a fixed element has the same law
rep = t.representative()
print(rep, "->", sample_conjugate(rep, rng))

# %% order 6 in S_9: classes weighted by size
table = enumerate_types_of_order(9, 6)
for ty, w in table.entries:
    print("  %-14s %8d  %.4f" % (ty, w, w / table.total))

draws = Counter(str(cycle_type_of(sample_order_m(9, 6, RandomSource(3, i)))) for i in range(20000))
print(draws.most_common(3))

# %% weights stay exact even when they dwarf 64-bit integers
big = enumerate_types_of_order(200, 2)
print(len(big), "involution classes in S_200; total has", len(str(big.total)), "digits")
