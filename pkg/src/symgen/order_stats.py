"""Fixed points and 2-cycles of a uniform element of given order.

A uniform element of order m is a class chosen with weight proportional to
its size, so every statistic here is an exact weighted sum over the cycle
types of order m.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .perm import CycleType, PermutationError, class_size
from .samplers import EmptyOrder, _divisors, enumerate_types_of_order


@dataclass(frozen=True)
class OrderMProfile:
    n: int
    m: int
    rows: tuple[tuple[int, int, int], ...]  # (c1, c2, weight), sorted
    total: int

    def probability(self, c1: int, c2: int) -> Fraction:
        for a, b, w in self.rows:
            if (a, b) == (c1, c2):
                return Fraction(w, self.total)
        return Fraction(0)

    def mean_fixed_points(self) -> Fraction:
        return Fraction(sum(c1 * w for c1, _, w in self.rows), self.total)

    def mean_two_cycles(self) -> Fraction:
        return Fraction(sum(c2 * w for _, c2, w in self.rows), self.total)

    def mass(self, pred) -> Fraction:
        """Probability that (c1, c2) satisfies ``pred``."""
        return Fraction(sum(w for c1, c2, w in self.rows if pred(c1, c2)), self.total)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["c1", "c2", "weight", "probability_numerator", "probability_denominator"])
        for c1, c2, wt in self.rows:
            pr = Fraction(wt, self.total)
            w.writerow([c1, c2, wt, pr.numerator, pr.denominator])
        return buf.getvalue()


def order_m_profile(n: int, m: int) -> OrderMProfile:
    table = enumerate_types_of_order(n, m)
    if not table:
        raise EmptyOrder("S_%d has no element of order %d" % (n, m))
    agg: dict[tuple[int, int], int] = {}
    for t, w in table.entries:
        key = (t.c(1), t.c(2))
        agg[key] = agg.get(key, 0) + w
    rows = tuple((c1, c2, w) for (c1, c2), w in sorted(agg.items()))
    return OrderMProfile(n, m, rows, table.total)


def class_ratio(t: CycleType, d: int, k: int) -> Fraction:
    """|class of t| / |class of t'|, t' trading kd fixed points for k d-cycles."""
    if k < 1 or not 2 <= d <= t.n:
        raise ValueError("need k >= 1 and 2 <= d <= n")
    c1 = t.c(1)
    if c1 < 2 * k * d:
        raise ValueError("need at least 2kd fixed points")
    counts = t.as_dict()
    counts[1] = c1 - k * d
    counts[d] = counts.get(d, 0) + k
    t2 = CycleType.from_counts(counts, t.n)
    return Fraction(class_size(t), class_size(t2))


@dataclass
class HypothesisReport:
    n: int
    m: int
    fix_coeff: float
    twocycle_frac: float
    small_divisor: int | None
    has_good_type: bool
    mass_too_many_fixed: Fraction
    mass_too_many_two_cycles: Fraction
    mass_violating_either: Fraction
    case_tags: list[str]
    dominant_type: str
    dominant_mass: Fraction
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def frac(x: Fraction):
            return {"numerator": str(x.numerator), "denominator": str(x.denominator), "value": float(x)}

        return {
            "n": self.n,
            "m": self.m,
            "thresholds": {"fix_coeff": self.fix_coeff, "twocycle_frac": self.twocycle_frac},
            "small_divisor": self.small_divisor,
            "has_good_type": self.has_good_type,
            "mass_too_many_fixed": frac(self.mass_too_many_fixed),
            "mass_too_many_two_cycles": frac(self.mass_too_many_two_cycles),
            "mass_violating_either": frac(self.mass_violating_either),
            "case_tags": self.case_tags,
            "dominant_type": self.dominant_type,
            "dominant_mass": frac(self.dominant_mass),
            "notes": self.notes,
        }


def check_generation_hypotheses(n: int, m: int, fix_coeff: float = 1.0,
                                twocycle_frac: float = 0.25) -> HypothesisReport:
    """Finite-n reading of the conditions on m, with the thresholds explicit.

    Fixed points count as "few" when at most fix_coeff * sqrt(n), 2-cycles
    when at most twocycle_frac * n.
    """
    table = enumerate_types_of_order(n, m)
    if not table:
        raise EmptyOrder("S_%d has no element of order %d" % (n, m))
    fix_cap = fix_coeff * math.sqrt(n)
    two_cap = twocycle_frac * n
    small = [d for d in _divisors(m) if 3 <= d <= fix_cap]

    too_fixed = too_two = either = 0
    good = False
    for t, w in table.entries:
        bad1, bad2 = t.c(1) > fix_cap, t.c(2) > two_cap
        too_fixed += w * bad1
        too_two += w * bad2
        either += w * (bad1 or bad2)
        good = good or not (bad1 or bad2)
    dom_t, dom_w = max(table.entries, key=lambda e: e[1])

    tags = []
    if m == 2:
        tags.append("m=2 exceptional: two involutions generate a dihedral group")
    elif m % 2 == 0:
        tags.append("m even, not 2")
    else:
        tags.append("m odd")
    if small:
        tags.append("divisor condition holds")
    if good:
        tags.append("few fixed points and 2-cycles attainable")

    return HypothesisReport(
        n, m, fix_coeff, twocycle_frac,
        small[0] if small else None, good,
        Fraction(too_fixed, table.total), Fraction(too_two, table.total),
        Fraction(either, table.total), tags, str(dom_t), Fraction(dom_w, table.total),
    )


__all__ = [
    "OrderMProfile", "order_m_profile", "class_ratio", "HypothesisReport",
    "check_generation_hypotheses", "EmptyOrder", "PermutationError",
]
