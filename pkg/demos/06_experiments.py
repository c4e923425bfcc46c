"""Seeded Monte Carlo: generation rates, the Poisson law, and the n-cycle example."""

from symgen.experiments import (
    ExperimentConfig,
    ncycle_transposition,
    poisson_check,
    run_generation_experiment,
    two_cycle_collision,
)

# %% two uniform permutations of 100 points
res = run_generation_experiment(ExperimentConfig(n=100, trials=2000, seed=1))
print(res.estimates["at_least_alternating"], "unknown", res.unknown_rate)

# %% two elements with many fixed points rarely generate
cfg = ExperimentConfig(n=1000, class1="1^100,900", class2="1^100,900", trials=300, seed=2)
print(run_generation_experiment(cfg).estimates["at_least_alternating"]["estimate"])

# %% N against Poisson(E N)
rep = poisson_check(ExperimentConfig(n=10_000, class1="1^100,9900", class2="1^100,9900",
                                     trials=2000, seed=3), k_max=3)
print(rep["lambda"], rep["p_zero"])

# %% the n-cycle with a random transposition: phi(n)/(n-1)
print(ncycle_transposition(12)["exhaustive"]["probability"])
print(ncycle_transposition(1000, trials=2000)["monte_carlo"])

# %% shared 2-cycles
print(two_cycle_collision(ExperimentConfig(n=20, class1="2^10", class2="2^10", trials=5000)))

# %% the same run on the command line:
#   symgen estimate --n 100 --trials 2000 --seed 1
