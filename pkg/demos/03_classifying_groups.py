"""What do two permutations generate?"""

from symgen import Permutation, RandomSource, classify, exact_order_oracle, orbit_census
from symgen.groups import find_block_system
from symgen.samplers import sample_uniform

P = Permutation.parse

# %% small cases by exact group order
for a, b in [("(1 2 3 4 5)", "(1 2)"), ("(1 2 3)", "(1 2 3)"), ("(1 2)(3 4)", "(1 3)(2 4)")]:
    p, q = P(a), P(b, P(a).n)
    print(a, b, classify(p, q, mode="exact").verdict.value, "order", exact_order_oracle(p, q))

# %% orbits: N counts the orbits of size at most n/2
c = orbit_census(P("(1 2)(3 4)", 6), P("(1 2)(5 6)"))
print(c.counts, "N =", c.small_orbit_total)

# %% blocks: the 12-cycle with (1 4) keeps the residues mod 3 together
n = 12
cyc = Permutation.from_cycles([range(1, n + 1)], n)
print(sorted(map(sorted, find_block_system(cyc, P("(1 4)", n)))))

# %% large n: a certificate instead of the order
n = 100_000
rng = RandomSource(7)
p, q = sample_uniform(n, rng), sample_uniform(n, rng)
res = classify(p, q, rng=rng)
cert = res.to_dict()["certificate"]
print(res.verdict.value, "after", res.words_tried, "elements; prime cycle", cert["prime"],
      "from", cert["word"], "|", cert["primitivity"])
