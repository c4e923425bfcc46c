"""Exact orbit-count moments and the counting lemmas behind them.

Everything returning a count or a probability is exact (``int`` or
``Fraction``); only the optimisation bound and the entropy helpers are
floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from scipy.optimize import minimize_scalar

from .perm import CycleType, Permutation, PermutationError, class_size, cycle_type_of

EXACT_K_LIMIT = 10
EQUIPARTITION_LIMIT = 12


class ExactLimitExceeded(ValueError):
    pass


# --- fixed k-sets ---------------------------------------------------------

@dataclass(frozen=True)
class FixedSetPolynomial:
    """f_0, ..., f_n: f_k is the number of k-sets a permutation of this type fixes."""

    n: int
    coefficients: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)


def fixed_set_polynomial(t: CycleType) -> FixedSetPolynomial:
    """Coefficients of prod_j (1 + x^j)^(c_j)."""
    coeffs = [1]
    for j, c in t.counts:
        factor = [0] * (j * c + 1)
        for i in range(c + 1):
            factor[i * j] = math.comb(c, i)
        out = [0] * (len(coeffs) + len(factor) - 1)
        for a, ca in enumerate(coeffs):
            if ca:
                for b, fb in enumerate(factor):
                    if fb:
                        out[a + b] += ca * fb
        coeffs = out
    return FixedSetPolynomial(t.n, tuple(coeffs))


def fk_upper_bound(t: CycleType, k: int) -> float:
    """min over x > 0 of x^-k prod_j (1 + x^j)^(c_j).

    The log of the objective is convex in log x, so a bounded scalar search
    over log x in [-60, 5] finds the minimum. Any x gives an upper bound on
    f_k, so the result is an upper bound whatever the search accuracy.
    """
    if not 1 <= k <= t.n:
        raise ValueError("k must lie in 1..n")
    js = np.array([j for j, _ in t.counts], dtype=float)
    cs = np.array([c for _, c in t.counts], dtype=float)

    def log_obj(u):
        return -k * u + float(np.dot(cs, np.logaddexp(0.0, js * u)))

    res = minimize_scalar(log_obj, bounds=(-60.0, 5.0), method="bounded",
                          options={"xatol": 1e-10})
    return math.exp(min(res.fun, log_obj(5.0), log_obj(0.0)))


# --- entropy --------------------------------------------------------------

def entropy_h(x: float) -> float:
    """x log(1/x) + (1 - x) log(1/(1 - x)), natural log."""
    if not 0 < x < 1:
        raise ValueError("entropy_h needs 0 < x < 1")
    return -x * math.log(x) - (1 - x) * math.log1p(-x)


def binom_entropy_bounds(n: int, k: int) -> tuple[float, float]:
    """(lower, upper) with lower <= C(n, k) <= upper = e^(h(k/n) n).

    The lower bound carries the explicit constant e^(nh) / sqrt(8 k (1 - k/n)).
    """
    if not 1 <= k <= n / 2:
        raise ValueError("need 1 <= k <= n/2")
    upper = math.exp(entropy_h(k / n) * n)
    return upper / math.sqrt(8 * k * (1 - k / n)), upper


def binom_entropy_upper_holds(n: int, k: int) -> bool:
    """C(n, k) <= e^(h(k/n) n), decided in integers.

    e^(h(k/n) n) = n^n / (k^k (n-k)^(n-k)).
    """
    return math.comb(n, k) * k**k * (n - k) ** (n - k) <= n**n


# --- two fixed-point-free involutions -------------------------------------

def p_two_regular(k: int) -> Fraction:
    """4^k k!^2 / (2k (2k)!): chance two random (2^k) elements are transitive."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(4**k * math.factorial(k) ** 2, 2 * k * math.factorial(2 * k))


def _is_fpf_involution(s: Permutation) -> bool:
    a = s.array
    idx = np.arange(s.n)
    return bool(np.all(a != idx) and np.all(a[a] == idx))


def matchings_to_even(s: Permutation, s2: Permutation) -> Permutation:
    """Pair of perfect matchings -> permutation with only even cycles.

    Starting from the smallest point x not yet handled, walk x, s(x),
    s2(s(x)), s(s2(s(x))), ... alternating the two matchings until x comes
    back; the walk is one cycle of the output.
    """
    if s.n != s2.n:
        raise PermutationError("size mismatch")
    if s.n % 2 or not (_is_fpf_involution(s) and _is_fpf_involution(s2)):
        raise PermutationError("both arguments must have cycle type (2^k)")
    a, b = s.array, s2.array
    n = s.n
    out = np.full(n, -1, dtype=a.dtype)
    for x in range(n):
        if out[x] >= 0:
            continue
        y = x
        step = 0
        while True:
            z = a[y] if step % 2 == 0 else b[y]
            out[y] = z
            y = z
            step += 1
            if y == x:
                break
    return Permutation._trusted(out)


def even_to_matchings(t: Permutation) -> tuple[Permutation, Permutation]:
    """Inverse of :func:`matchings_to_even`."""
    a = np.empty(t.n, dtype=t.array.dtype)
    b = np.empty(t.n, dtype=t.array.dtype)
    for cyc in t.cycles(include_fixed=True):
        if len(cyc) % 2:
            raise PermutationError("all cycles must have even length")
        pts = [x - 1 for x in cyc]
        ln = len(pts)
        for i in range(ln):
            u, v = pts[i], pts[(i + 1) % ln]
            m = a if i % 2 == 0 else b
            m[u] = v
            m[v] = u
    return Permutation._trusted(a), Permutation._trusted(b)


# --- transitive pairs and E N_k -------------------------------------------

def _key(t: CycleType) -> tuple[tuple[int, int], ...]:
    return t.counts


def _sub_counts(counts: tuple[tuple[int, int], ...], size: int):
    """Sub-multisets of a cycle-type count tuple with total size ``size``."""
    js = [j for j, _ in counts]
    cs = [c for _, c in counts]

    def walk(i, remaining):
        if remaining == 0:
            yield ()
            return
        if i == len(js):
            return
        j = js[i]
        for d in range(min(cs[i], remaining // j), -1, -1):
            for rest in walk(i + 1, remaining - d * j):
                yield ((j, d),) + rest if d else rest

    yield from walk(0, size)


def _minus(counts, sub):
    sub = dict(sub)
    return tuple((j, c - sub.get(j, 0)) for j, c in counts if c - sub.get(j, 0))


def _csize(counts) -> int:
    n = sum(j * c for j, c in counts)
    denom = 1
    for j, c in counts:
        denom *= j**c * math.factorial(c)
    return math.factorial(n) // denom


@lru_cache(maxsize=None)
def _transitive_count(c1, c2) -> int:
    n = sum(j * c for j, c in c1)
    if n == 0:
        return 0
    if n == 1:
        return 1
    # condition on the size s of the orbit of a marked point
    others = 0
    for s in range(1, n):
        ways = math.comb(n - 1, s - 1)
        acc = 0
        for d1 in _sub_counts(c1, s):
            for d2 in _sub_counts(c2, s):
                t = _transitive_count(d1, d2)
                if t:
                    acc += t * _csize(_minus(c1, d1)) * _csize(_minus(c2, d2))
        others += ways * acc
    return _csize(c1) * _csize(c2) - others


def transitive_pair_count(d: CycleType, d2: CycleType) -> int:
    """Ordered pairs of the two given types generating a transitive group."""
    if d.n != d2.n:
        raise PermutationError("types live on %d and %d points" % (d.n, d2.n))
    return _transitive_count(_key(d), _key(d2))


def transitive_pair_probability(d: CycleType, d2: CycleType) -> Fraction:
    return Fraction(transitive_pair_count(d, d2), class_size(d) * class_size(d2))


def expected_Nk_exact(t: CycleType, t2: CycleType, k: int, limit: int = EXACT_K_LIMIT) -> Fraction:
    """E N_k for independent uniform elements of the classes of t and t2.

    Sum over ways to pick cycles of total length k from each element; each
    choice forms a common orbit with probability 1/C(n, k) times the chance
    that the restricted pair is transitive.
    """
    if t.n != t2.n:
        raise PermutationError("types live on %d and %d points" % (t.n, t2.n))
    n = t.n
    if not 1 <= k <= n:
        raise ValueError("k must lie in 1..n")
    if k > limit:
        raise ExactLimitExceeded("k=%d exceeds exact limit %d" % (k, limit))
    small1 = tuple((j, c) for j, c in t.counts if j <= k)
    small2 = tuple((j, c) for j, c in t2.counts if j <= k)
    c1, c2 = dict(small1), dict(small2)
    total = Fraction(0)
    for d1 in _sub_counts(small1, k):
        w1 = math.prod(math.comb(c1[j], dj) for j, dj in d1)
        for d2 in _sub_counts(small2, k):
            tc = _transitive_count(d1, d2)
            if not tc:
                continue
            w2 = math.prod(math.comb(c2[j], dj) for j, dj in d2)
            total += Fraction(w1 * w2 * tc, _csize(d1) * _csize(d2))
    return total / math.comb(n, k)


@dataclass(frozen=True)
class MomentReport:
    t: CycleType
    t2: CycleType
    k_max: int
    terms: tuple[tuple[int, Fraction], ...]
    truncated_at: int | None

    @property
    def total(self) -> Fraction:
        return sum((v for _, v in self.terms), Fraction(0))

    def term(self, k: int) -> Fraction:
        return dict(self.terms)[k]

    def to_dict(self) -> dict:
        s = self.total
        return {
            "n": self.t.n,
            "class": str(self.t),
            "class2": str(self.t2),
            "terms": [{"k": k, "numerator": str(v.numerator), "denominator": str(v.denominator),
                       "value": float(v)} for k, v in self.terms],
            "sum": {"numerator": str(s.numerator), "denominator": str(s.denominator), "value": float(s)},
            "truncated_at": self.truncated_at,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def expected_N(t: CycleType, t2: CycleType, k_max: int | None = None,
               limit: int = EXACT_K_LIMIT) -> MomentReport:
    """E N_1, ..., E N_{k_max} and their sum (N counts orbits of size <= n/2)."""
    half = t.n // 2
    if k_max is None:
        k_max = min(half, limit)
    if k_max > half:
        raise ValueError("k_max=%d exceeds n/2" % k_max)
    terms = tuple((k, expected_Nk_exact(t, t2, k, limit)) for k in range(1, k_max + 1))
    return MomentReport(t, t2, k_max, terms, k_max if k_max < half else None)


# --- fixed points and 2-cycles --------------------------------------------

def common_fixed_point_disjoint_prob(c1: int, c1p: int, n: int) -> Fraction:
    """P(random c1-set and c1p-set of {1..n} are disjoint) = C(n-c1, c1p)/C(n, c1p)."""
    if not (0 <= c1 <= n and 0 <= c1p <= n):
        raise ValueError("set sizes must lie in 0..n")
    return Fraction(math.comb(n - c1, c1p), math.comb(n, c1p))


def common_two_cycle_prob(t: CycleType, t2: CycleType) -> Fraction:
    """P(uniform elements of the two classes share a 2-cycle), by inclusion-exclusion.

    Given j disjoint transpositions, the chance that a uniform element of
    the class of t2 contains all of them is
    2^j c'_2!/(c'_2 - j)! (n - 2j)!/n!.
    """
    if t.n != t2.n:
        raise PermutationError("types live on %d and %d points" % (t.n, t2.n))
    n = t.n
    a, b = t.c(2), t2.c(2)
    total = Fraction(0)
    for j in range(1, min(a, b) + 1):
        contain = Fraction(2**j * math.perm(b, j) * math.factorial(n - 2 * j), math.factorial(n))
        total += (-1) ** (j + 1) * math.comb(a, j) * contain
    return total


# --- invariant equipartitions ---------------------------------------------

@lru_cache(maxsize=64)
def _equipartitions(n: int, k: int) -> np.ndarray:
    """All partitions of range(n) into k cells of size n/k, as label rows."""
    m = n // k
    rows = []
    labels = [-1] * n

    def place(cell):
        if cell == k:
            rows.append(list(labels))
            return
        first = labels.index(-1)
        free = [x for x in range(first + 1, n) if labels[x] < 0]
        from itertools import combinations

        for rest in combinations(free, m - 1):
            labels[first] = cell
            for x in rest:
                labels[x] = cell
            place(cell + 1)
            labels[first] = -1
            for x in rest:
                labels[x] = -1

    place(0)
    out = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    out.setflags(write=False)
    return out


def equipartition_count(n: int, k: int) -> int:
    """|X_k| = n! / (k! (n/k)!^k)."""
    if k < 1 or n % k:
        raise ValueError("k must divide n")
    return math.factorial(n) // (math.factorial(k) * math.factorial(n // k) ** k)


def count_invariant_equipartitions(p: Permutation, k: int, limit: int = EQUIPARTITION_LIMIT) -> int:
    """Number of partitions into k equal cells that p maps to themselves."""
    n = p.n
    if k < 1 or n % k:
        raise ValueError("k must divide n")
    if n > limit:
        raise ExactLimitExceeded("n=%d exceeds enumeration limit %d" % (n, limit))
    labels = _equipartitions(n, k)
    image = labels[:, p.array]
    # invariant iff the cell of x determines the cell of p(x)
    codes = np.sort(labels * k + image, axis=1)
    distinct = 1 + np.count_nonzero(np.diff(codes, axis=1), axis=1)
    return int(np.count_nonzero(distinct == k))
