"""Command-line entry point: ``symgen <subcommand> ...``.

Every subcommand prints one JSON record (to stdout or ``--out``). Exit codes:
0 success, 2 bad configuration or input, 3 an exact or oracle limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import (
    ConfigError,
    ExperimentConfig,
    ncycle_transposition,
    poisson_check,
    run_generation_experiment,
    two_cycle_collision,
)
from .groups import OracleLimitExceeded, classify, orbit_census
from .moments import ExactLimitExceeded, expected_N
from .order_stats import check_generation_hypotheses, order_m_profile
from .perm import CycleType, Permutation, PermutationError, all_cycle_types, class_size
from .samplers import EmptyOrder, RandomSource, enumerate_types_of_order

EXIT_CONFIG = 2
EXIT_LIMIT = 3

_CONFIG_FLAGS = ("n", "class1", "class2", "trials", "seed", "mode", "budget", "workers")


def _add_config_flags(sp):
    sp.add_argument("--config", help="key=value file; flags override it")
    sp.add_argument("--n", type=int)
    sp.add_argument("--class1", help="uniform, order:m, or a cycle type like 1^3,2^2")
    sp.add_argument("--class2")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--mode", choices=["exact", "certificate"])
    sp.add_argument("--budget", type=int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--conjugate", action="store_true",
                    help="draw the second element as a random conjugate of a fixed representative")


def _config(args) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as e:
            raise ConfigError(str(e)) from None
        data.update(ExperimentConfig.from_kv_text(text).to_dict())
    for key in _CONFIG_FLAGS:
        v = getattr(args, key, None)
        if v is not None:
            data[key] = v
    if getattr(args, "conjugate", False):
        data["conjugate"] = True
    return ExperimentConfig.from_mapping(data)


def _emit(args, record: dict):
    text = json.dumps(record, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _write_csv(path: str | None, text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_sample(args):
    from .experiments import ClassSpec

    spec = ClassSpec.parse(args.cls, args.n)
    out = []
    for i in range(args.count):
        p = spec.sample(RandomSource(args.seed, i))
        out.append(str(p) if args.cycles else list(p.images))
    return {"n": args.n, "class": str(spec), "seed": args.seed, "samples": out}


def _perm(text: str, n: int | None) -> Permutation:
    try:
        return Permutation.parse(text, n)
    except (PermutationError, ValueError) as e:
        raise ConfigError("bad permutation %r: %s" % (text, e)) from None


def cmd_classify(args):
    p, q = _perm(args.p, args.n), _perm(args.q, args.n)
    if p.n != q.n:
        # cycle notation without --n takes the largest point mentioned
        n = max(p.n, q.n)
        p, q = _perm(args.p, n), _perm(args.q, n)
    res = classify(p, q, mode=args.mode, budget=args.budget, rng=RandomSource(args.seed))
    census = orbit_census(p, q)
    d = res.to_dict()
    d["n"] = p.n
    d["N"] = census.small_orbit_total
    return d


def cmd_estimate(args):
    cfg = _config(args)
    res = run_generation_experiment(cfg)
    _write_csv(args.csv, res.census_csv())
    return res.to_dict()


def _type(text: str, n: int | None) -> CycleType:
    try:
        return CycleType.parse(text, n)
    except PermutationError as e:
        raise ConfigError(str(e)) from None


def cmd_exact_en(args):
    t1 = _type(args.class1, args.n)
    t2 = _type(args.class2, t1.n)
    rep = expected_N(t1, t2, args.k_max, limit=args.limit)
    if args.csv:
        lines = ["k,numerator,denominator,value"]
        lines += ["%d,%d,%d,%.17g" % (k, v.numerator, v.denominator, float(v)) for k, v in rep.terms]
        _write_csv(args.csv, "\n".join(lines) + "\n")
    return rep.to_dict()


def cmd_order_stats(args):
    prof = order_m_profile(args.n, args.m)
    _write_csv(args.csv, prof.to_csv())
    rep = check_generation_hypotheses(args.n, args.m, args.fix_coeff, args.twocycle_frac)
    mean = prof.mean_fixed_points()
    return {
        "n": args.n,
        "m": args.m,
        "total": str(prof.total),
        "rows": [{"c1": a, "c2": b, "weight": str(w)} for a, b, w in prof.rows],
        "mean_fixed_points": float(mean),
        "hypotheses": rep.to_dict(),
    }


def cmd_poisson_check(args):
    return poisson_check(_config(args), args.k_max)


def cmd_two_cycle(args):
    return two_cycle_collision(_config(args))


def cmd_ncycle(args):
    return ncycle_transposition(args.n, args.trials, RandomSource(args.seed))


def cmd_partitions(args):
    if args.order is not None:
        table = enumerate_types_of_order(args.n, args.order)
        rows = [(t, w) for t, w in table.entries]
        _write_csv(args.csv, table.to_csv())
    else:
        rows = [(t, class_size(t)) for t in all_cycle_types(args.n)]
    return {"n": args.n, "order": args.order, "count": len(rows),
            "types": [{"type": str(t), "class_size": str(w), "order": t.order} for t, w in rows]}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symgen", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--out", help="write the JSON record here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("sample", cmd_sample, "draw permutations")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="cls", default="uniform")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cycles", action="store_true", help="print cycle notation")

    sp = add("classify", cmd_classify, "classify the group generated by two permutations")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("--n", type=int)
    sp.add_argument("--mode", choices=["exact", "certificate"], default="certificate")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("estimate", cmd_estimate, "Monte Carlo generation probability")
    _add_config_flags(sp)
    sp.add_argument("--csv", help="per-k orbit statistics")

    sp = add("exact-en", cmd_exact_en, "exact E N_k for two cycle types")
    sp.add_argument("--class1", required=True)
    sp.add_argument("--class2", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k-max", type=int)
    sp.add_argument("--limit", type=int, default=10)
    sp.add_argument("--csv")

    sp = add("order-stats", cmd_order_stats, "fixed points and 2-cycles at order m")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--fix-coeff", type=float, default=1.0)
    sp.add_argument("--twocycle-frac", type=float, default=0.25)
    sp.add_argument("--csv")

    sp = add("poisson-check", cmd_poisson_check, "orbit count against Poisson")
    _add_config_flags(sp)
    sp.add_argument("--k-max", type=int, default=3)

    sp = add("two-cycle", cmd_two_cycle, "chance of a shared 2-cycle")
    _add_config_flags(sp)

    sp = add("ncycle-transposition", cmd_ncycle, "n-cycle with a random transposition")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("partitions", cmd_partitions, "cycle types of S_n with class sizes")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--order", type=int)
    sp.add_argument("--csv")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        record = args.func(args)
    except (ExactLimitExceeded, OracleLimitExceeded) as e:
        print("limit exceeded: %s" % e, file=sys.stderr)
        return EXIT_LIMIT
    except (ConfigError, PermutationError, EmptyOrder, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    _emit(args, record)
    return 0


if __name__ == "__main__":
    sys.exit(main())
