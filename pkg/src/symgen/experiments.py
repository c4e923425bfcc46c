"""Seeded Monte Carlo experiments over pairs of random permutations.

Trial ``i`` draws from ``RandomSource(seed, i)``, so a result depends only
on the configuration and never on how trials are split across workers.
Aggregation only adds counts.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np
from scipy.stats import binomtest

from .groups import DEFAULT_BUDGET, Verdict, classify, orbit_census
from .moments import common_two_cycle_prob, expected_N
from .perm import CycleType, Permutation, PermutationError, conjugate
from .samplers import (
    EmptyOrder,
    RandomSource,
    _cached_table,
    choose_class,
    sample_class,
    sample_order_m,
    sample_uniform,
)

CENSUS_K_MAX = 6


class ConfigError(ValueError):
    pass


def _version() -> str:
    try:
        from importlib.metadata import version

        return version("artifact")
    except Exception:
        return "unknown"


# --- class specifications ---------------------------------------------------

@dataclass(frozen=True)
class ClassSpec:
    """``uniform``, ``order:m`` or a cycle type such as ``1^3,2^2``."""

    kind: str
    n: int
    t: CycleType | None = None
    m: int | None = None

    @classmethod
    def parse(cls, text: str, n: int) -> "ClassSpec":
        text = text.strip()
        if text == "uniform":
            return cls("uniform", n)
        if text.startswith("order:"):
            try:
                m = int(text[6:])
            except ValueError:
                raise ConfigError("bad order spec %r" % text) from None
            if not _cached_table(n, m):
                raise ConfigError("S_%d has no element of order %d" % (n, m))
            return cls("order", n, m=m)
        try:
            return cls("type", n, t=CycleType.parse(text, n))
        except PermutationError as e:
            raise ConfigError(str(e)) from None

    def __str__(self):
        if self.kind == "uniform":
            return "uniform"
        if self.kind == "order":
            return "order:%d" % self.m
        return str(self.t)

    def sample(self, rng: RandomSource) -> Permutation:
        if self.kind == "uniform":
            return sample_uniform(self.n, rng)
        if self.kind == "order":
            return sample_order_m(self.n, self.m, rng)
        return sample_class(self.t, rng)

    def sample_by_conjugation(self, rng: RandomSource) -> Permutation:
        """Same law as :meth:`sample`: a uniform conjugate of a fixed class representative."""
        if self.kind == "uniform":
            return sample_uniform(self.n, rng)
        t = self.t if self.kind == "type" else choose_class(_cached_table(self.n, self.m), rng)
        return conjugate(t.representative(), sample_uniform(self.n, rng))


# --- configuration ----------------------------------------------------------

_KEYS = {"n", "class1", "class2", "trials", "seed", "mode", "budget", "outputs", "workers",
         "conjugate"}


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    class1: str = "uniform"
    class2: str = "uniform"
    trials: int = 1000
    seed: int = 0
    mode: str = "certificate"
    budget: int = DEFAULT_BUDGET
    outputs: tuple[str, ...] = ("verdicts", "census")
    workers: int = 1
    # draw the second element as a conjugate of a fixed representative
    conjugate: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("n must be positive")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.mode not in ("exact", "certificate"):
            raise ConfigError("mode must be exact or certificate")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        bad = set(self.outputs) - {"verdicts", "census"}
        if bad:
            raise ConfigError("unknown outputs: %s" % ",".join(sorted(bad)))
        self.spec1, self.spec2  # parse eagerly so bad class strings fail here

    @property
    def spec1(self) -> ClassSpec:
        return ClassSpec.parse(self.class1, self.n)

    @property
    def spec2(self) -> ClassSpec:
        return ClassSpec.parse(self.class2, self.n)

    @classmethod
    def from_mapping(cls, data: dict) -> "ExperimentConfig":
        unknown = set(data) - _KEYS
        if unknown:
            raise ConfigError("unknown config keys: %s" % ",".join(sorted(unknown)))
        if "n" not in data:
            raise ConfigError("config needs n")
        kw: dict = {}
        try:
            for key in ("n", "trials", "seed", "budget", "workers"):
                if key in data:
                    kw[key] = int(data[key])
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e)) from None
        for key in ("class1", "class2", "mode"):
            if key in data:
                kw[key] = str(data[key])
        if "outputs" in data:
            out = data["outputs"]
            kw["outputs"] = tuple(x.strip() for x in out.split(",") if x.strip()) if isinstance(out, str) else tuple(out)
        if "conjugate" in data:
            v = data["conjugate"]
            kw["conjugate"] = v if isinstance(v, bool) else str(v).lower() in ("1", "true", "yes")
        return cls(**kw)

    @classmethod
    def from_kv_text(cls, text: str) -> "ExperimentConfig":
        """Parse ``key = value`` lines; ``#`` starts a comment."""
        data = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("line %d: expected key=value" % lineno)
            k, v = line.split("=", 1)
            data[k.strip()] = v.strip()
        return cls.from_mapping(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["outputs"] = list(self.outputs)
        return d


# --- statistics -------------------------------------------------------------

def wilson(successes: int, trials: int) -> dict:
    """Point estimate with its 95% Wilson interval."""
    ci = binomtest(successes, trials).proportion_ci(0.95, method="wilson")
    return {"estimate": successes / trials, "low": float(ci.low), "high": float(ci.high),
            "successes": successes, "trials": trials}


# --- generation experiment --------------------------------------------------

def _run_trial(cfg: ExperimentConfig, spec1: ClassSpec, spec2: ClassSpec, i: int):
    rng = RandomSource(cfg.seed, i)
    p = spec1.sample(rng)
    q = spec2.sample_by_conjugation(rng) if cfg.conjugate else spec2.sample(rng)
    census = orbit_census(p, q) if "census" in cfg.outputs else None
    verdict = classify(p, q, mode=cfg.mode, budget=cfg.budget, rng=rng).verdict \
        if "verdicts" in cfg.outputs else None
    return verdict, census


def _run_range(cfg: ExperimentConfig, lo: int, hi: int):
    spec1, spec2 = cfg.spec1, cfg.spec2
    verdicts: Counter = Counter()
    n_hist: Counter = Counter()
    nk_hist: Counter = Counter()  # keys (k, value)
    for i in range(lo, hi):
        v, census = _run_trial(cfg, spec1, spec2, i)
        if v is not None:
            verdicts[v.value] += 1
        if census is not None:
            n_hist[census.small_orbit_total] += 1
            for k in range(1, CENSUS_K_MAX + 1):
                nk_hist[(k, census.N(k))] += 1
    return verdicts, n_hist, nk_hist


def _chunks(trials: int, workers: int):
    step = max(1, math.ceil(trials / (4 * workers)))
    return [(lo, min(trials, lo + step)) for lo in range(0, trials, step)]


def run_trials(cfg: ExperimentConfig, fn=_run_range):
    """Run trials 0..trials-1 through ``fn`` and sum the returned counters."""
    if cfg.workers == 1:
        parts = [fn(cfg, 0, cfg.trials)]
    else:
        ranges = _chunks(cfg.trials, cfg.workers)
        with ProcessPoolExecutor(cfg.workers) as ex:
            parts = list(ex.map(fn, [cfg] * len(ranges), *zip(*ranges)))
    total = [Counter() for _ in parts[0]]
    for part in parts:
        for acc, c in zip(total, part):
            acc.update(c)
    return total


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    verdict_counts: dict[str, int]
    estimates: dict[str, dict]
    n_distribution: dict[int, int]
    nk_distribution: dict[int, dict[int, int]]
    unknown_rate: float | None
    wall_time: float
    provenance: dict = field(default_factory=dict)

    def to_dict(self, include_time: bool = True) -> dict:
        d = {
            "config": self.config.to_dict(),
            "verdict_counts": self.verdict_counts,
            "estimates": self.estimates,
            "n_distribution": {str(k): v for k, v in sorted(self.n_distribution.items())},
            "nk_distribution": {str(k): {str(a): b for a, b in sorted(h.items())}
                                for k, h in sorted(self.nk_distribution.items())},
            "unknown_rate": self.unknown_rate,
            "provenance": self.provenance,
        }
        if include_time:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), sort_keys=True)

    def census_csv(self) -> str:
        lines = ["k,mean_Nk,prob_Nk_positive"]
        t = self.config.trials
        for k, h in sorted(self.nk_distribution.items()):
            mean = sum(a * b for a, b in h.items()) / t
            pos = sum(b for a, b in h.items() if a > 0) / t
            lines.append("%d,%.10g,%.10g" % (k, mean, pos))
        return "\n".join(lines) + "\n"


def run_generation_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    start = time.perf_counter()
    verdicts, n_hist, nk_hist = run_trials(cfg)
    t = cfg.trials
    estimates = {}
    unknown = None
    if "verdicts" in cfg.outputs:
        top = verdicts[Verdict.ALTERNATING.value] + verdicts[Verdict.SYMMETRIC.value]
        estimates["at_least_alternating"] = wilson(top, t)
        estimates["symmetric"] = wilson(verdicts[Verdict.SYMMETRIC.value], t)
        estimates["transitive"] = wilson(t - verdicts[Verdict.INTRANSITIVE.value], t)
        unknown = verdicts[Verdict.UNKNOWN_PRIMITIVE.value] / t
    nk: dict[int, dict[int, int]] = {}
    for (k, v), c in nk_hist.items():
        nk.setdefault(k, {})[v] = c
    return ExperimentResult(
        cfg,
        {v.value: verdicts[v.value] for v in Verdict if verdicts[v.value]},
        estimates,
        dict(n_hist),
        nk,
        unknown,
        time.perf_counter() - start,
        {"seed": cfg.seed, "version": _version(), "trial_streams": "RandomSource(seed, i), i < trials"},
    )


# --- Poisson check ----------------------------------------------------------

def _census_range(k_max: int, cfg: ExperimentConfig, lo: int, hi: int):
    spec1, spec2 = cfg.spec1, cfg.spec2
    zero: Counter = Counter()
    trunc: Counter = Counter()
    for i in range(lo, hi):
        rng = RandomSource(cfg.seed, i)
        p = spec1.sample(rng)
        q = spec2.sample_by_conjugation(rng) if cfg.conjugate else spec2.sample(rng)
        census = orbit_census(p, q)
        zero[census.small_orbit_total == 0] += 1
        trunc[sum(census.N(k) for k in range(1, k_max + 1))] += 1
    return zero, trunc


def _falling(x: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= x - i
    return out


def poisson_check(cfg: ExperimentConfig, k_max: int = 3) -> dict:
    """Compare the orbit count with Poisson(lambda), lambda = exact E N truncated at k_max.

    Reports empirical P(N = 0) against e^-lambda and the factorial moments
    E[(N)_m], m = 1, 2, 3, of N truncated at k_max against lambda^m. Standard
    errors are the larger of the empirical one and the one a Poisson(lambda)
    variable would have, so a sample that happens to show no spread cannot
    shrink the tolerance to zero.
    """
    s1, s2 = cfg.spec1, cfg.spec2
    if s1.kind != "type" or s2.kind != "type":
        raise ConfigError("poisson_check needs two cycle types")
    report = expected_N(s1.t, s2.t, k_max)
    lam = float(report.total)
    start = time.perf_counter()
    zero, trunc = run_trials(cfg, partial(_census_range, k_max))
    t = cfg.trials
    p0 = zero[True] / t
    p0_null = math.exp(-lam)
    se0 = max(math.sqrt(p0 * (1 - p0) / t), math.sqrt(p0_null * (1 - p0_null) / t))

    moments = []
    # Poisson variances of (N)_m: lambda, 4 lambda^3 + 2 lambda^2, 9 l^5 + 18 l^4 + 6 l^3
    null_var = [lam, 4 * lam**3 + 2 * lam**2, 9 * lam**5 + 18 * lam**4 + 6 * lam**3]
    for m in (1, 2, 3):
        mean = sum(_falling(x, m) * c for x, c in trunc.items()) / t
        sq = sum(_falling(x, m) ** 2 * c for x, c in trunc.items()) / t
        emp_var = max(sq - mean**2, 0.0)
        se = math.sqrt(max(emp_var, null_var[m - 1]) / t)
        moments.append({"m": m, "empirical": mean, "target": lam**m, "deviation": mean - lam**m,
                        "se": se, "z": (mean - lam**m) / se if se else 0.0})
    return {
        "config": cfg.to_dict(),
        "lambda": lam,
        "lambda_exact": report.to_dict(),
        "k_max": k_max,
        "p_zero": {"empirical": p0, "target": p0_null, "deviation": p0 - p0_null, "se": se0,
                   **{k: v for k, v in wilson(zero[True], t).items() if k in ("low", "high")}},
        "factorial_moments": moments,
        "distribution_truncated": {str(k): v for k, v in sorted(trunc.items())},
        "wall_time": time.perf_counter() - start,
    }


# --- n-cycle plus transposition ---------------------------------------------

def totient(n: int) -> int:
    return sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)


def ncycle_transposition(n: int, trials: int = 0, rng: RandomSource | None = None,
                         exhaustive_limit: int = 20, exact_limit: int = 12) -> dict:
    """The n-cycle (1 2 ... n) with a uniform transposition.

    Exact value phi(n)/(n-1); independently, every transposition is
    classified when n <= ``exhaustive_limit`` (by group order when
    n <= ``exact_limit``), and ``trials`` random transpositions are
    classified in certificate mode.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    c = Permutation.from_cycles([range(1, n + 1)], n)
    exact = Fraction(totient(n), n - 1)
    out: dict = {"n": n, "exact": {"numerator": exact.numerator, "denominator": exact.denominator,
                                   "value": float(exact)}}
    if rng is None:
        rng = RandomSource(0)
    if n <= exhaustive_limit:
        mode = "exact" if n <= exact_limit else "certificate"
        hits = pairs = 0
        by_x = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                v = classify(c, Permutation.from_cycles([(i, j)], n), mode=mode, rng=rng).verdict
                pairs += 1
                hits += v.at_least_alternating
                if i == 1:
                    by_x[j - 1] = v.value
        frac = Fraction(hits, pairs)
        out["exhaustive"] = {"mode": mode, "pairs": pairs, "at_least_alternating": hits,
                             "probability": {"numerator": frac.numerator,
                                             "denominator": frac.denominator},
                             "agrees": frac == exact, "verdict_by_x": by_x}
    if trials:
        t2 = CycleType.from_counts({1: n - 2, 2: 1}, n)
        hits = 0
        for i in range(trials):
            r = rng.substream(i + 1)
            q = sample_class(t2, r)
            hits += classify(c, q, rng=r).verdict.at_least_alternating
        est = wilson(hits, trials)
        sigma = math.sqrt(float(exact) * (1 - float(exact)) / trials)
        est["z"] = (est["estimate"] - float(exact)) / sigma if sigma else 0.0
        out["monte_carlo"] = est
    return out


# --- common 2-cycles ----------------------------------------------------------

def has_common_two_cycle(p: Permutation, q: Permutation) -> bool:
    a, b = p.array, q.array
    idx = np.arange(p.n)
    return bool(np.any((a != idx) & (a[a] == idx) & (b == a) & (b[b] == idx)))


def two_cycle_collision(cfg: ExperimentConfig) -> dict:
    """Empirical chance that the two elements share a 2-cycle, with the exact value."""
    s1, s2 = cfg.spec1, cfg.spec2
    hits = 0
    for i in range(cfg.trials):
        rng = RandomSource(cfg.seed, i)
        p = s1.sample(rng)
        q = s2.sample_by_conjugation(rng) if cfg.conjugate else s2.sample(rng)
        hits += has_common_two_cycle(p, q)
    out = {"config": cfg.to_dict(), "empirical": wilson(hits, cfg.trials)}
    if s1.kind == "type" and s2.kind == "type":
        ex = common_two_cycle_prob(s1.t, s2.t)
        out["exact"] = {"numerator": str(ex.numerator), "denominator": str(ex.denominator),
                        "value": float(ex)}
        out["c2"], out["c2_prime"] = s1.t.c(2), s2.t.c(2)
    return out


__all__ = [
    "ClassSpec", "ConfigError", "EmptyOrder", "ExperimentConfig", "ExperimentResult",
    "run_generation_experiment", "poisson_check", "ncycle_transposition",
    "two_cycle_collision", "has_common_two_cycle", "totient", "wilson",
]
