"""What does <p, q> look like: orbits, blocks, exact order, and a verdict.

Two classification modes:

* ``exact``: orbits, a full block scan, then the group order from a
  deterministic Schreier-Sims chain compared with n!/2 and n!. Only for
  n up to the oracle limit.
* ``certificate``: orbits, then p, q and random elements of <p, q> from
  product replacement. An element with a cycle longer than n/2 lets primitivity be decided with one block
  refinement per prime factor of that cycle length. An element with a cycle of
  prime length r <= n - 3 whose length divides no other cycle length gives,
  after a suitable power, an r-cycle in the group; primitive plus such a
  cycle means the group contains A_n (Jordan). The parity of the generators
  then separates A_n from S_n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .perm import Permutation, PermutationError, is_even
from .samplers import RandomSource


class NotTransitive(ValueError):
    pass


class OracleLimitExceeded(ValueError):
    pass


class Verdict(str, Enum):
    INTRANSITIVE = "Intransitive"
    IMPRIMITIVE = "TransitiveImprimitive"
    PRIMITIVE_PROPER = "PrimitiveProper"
    ALTERNATING = "Alternating"
    SYMMETRIC = "Symmetric"
    UNKNOWN_PRIMITIVE = "UnknownPrimitive"

    @property
    def at_least_alternating(self) -> bool:
        return self in (Verdict.ALTERNATING, Verdict.SYMMETRIC)


DEFAULT_ORACLE_LIMIT = 12
DEFAULT_BUDGET = 200
DEFAULT_BLOCK_SCAN_LIMIT = 5000
# below this degree a prime cycle of length <= n - 3 is rare; certificate mode asks the oracle instead
CERT_ORACLE_FALLBACK = 7
PR_SLOTS = 5
PR_BURN_IN = 10
CERT_CYCLE_PRINT_LIMIT = 100


def _gens(p: Permutation, q: Permutation) -> np.ndarray:
    if p.n != q.n:
        raise PermutationError("permutations act on %d and %d points" % (p.n, q.n))
    return np.stack([p.array, q.array])


@dataclass(frozen=True)
class OrbitCensus:
    n: int
    counts: dict[int, int]
    small_orbit_total: int
    two_cycle_orbit_count: int

    def N(self, k: int) -> int:
        return self.counts.get(k, 0)

    @property
    def num_orbits(self) -> int:
        return sum(self.counts.values())

    @property
    def orbit_sizes(self) -> list[int]:
        return sorted((k for k, c in self.counts.items() for _ in range(c)), reverse=True)


def orbit_sizes_and_labels(p: Permutation, q: Permutation):
    labels, k = _kernels.orbit_labels(_gens(p, q))
    return labels, np.bincount(labels, minlength=k)


def orbit_census(p: Permutation, q: Permutation, two_cycle_bound: float | None = None) -> OrbitCensus:
    """Orbit sizes of <p, q>, N, and the count of small all-2-cycle orbits.

    An orbit enters ``two_cycle_orbit_count`` when its size is below
    ``two_cycle_bound`` (default n^(1/3)) and both p and q restrict to it as
    fixed-point-free involutions.
    """
    n = p.n
    labels, sizes = orbit_sizes_and_labels(p, q)
    ks, cs = np.unique(sizes, return_counts=True)
    counts = {int(k): int(c) for k, c in zip(ks, cs)}
    small = sum(c for k, c in counts.items() if k <= n / 2)

    if two_cycle_bound is None:
        two_cycle_bound = n ** (1 / 3)
    a, b = p.array, q.array
    idx = np.arange(n)
    good = (a != idx) & (a[a] == idx) & (b != idx) & (b[b] == idx)
    bad_per_orbit = np.bincount(labels, weights=~good, minlength=len(sizes))
    two = int(np.count_nonzero((bad_per_orbit == 0) & (sizes < two_cycle_bound)))
    return OrbitCensus(n, counts, small, two)


def is_transitive(p: Permutation, q: Permutation) -> bool:
    return _kernels.orbit_labels(_gens(p, q))[1] == 1


def _blocks_from_roots(roots: np.ndarray) -> list[frozenset[int]]:
    order = np.argsort(roots, kind="stable")
    splits = np.flatnonzero(np.diff(roots[order])) + 1
    blocks = [frozenset((grp + 1).tolist()) for grp in np.split(order, splits)]
    return sorted(blocks, key=min)


def _require_transitive(gens: np.ndarray):
    if _kernels.orbit_labels(gens)[1] != 1:
        raise NotTransitive("<p, q> is not transitive")


def block_system_containing(p: Permutation, q: Permutation, pair: tuple[int, int]) -> list[frozenset[int]]:
    """The finest block system in which the two given points share a block."""
    gens = _gens(p, q)
    _require_transitive(gens)
    a, b = pair
    roots = _kernels.minimal_block(gens, a - 1, b - 1)
    if not roots.size:
        return [frozenset(range(1, p.n + 1))]
    return _blocks_from_roots(roots)


def minimal_block_containing(p: Permutation, q: Permutation, pair: tuple[int, int]) -> frozenset[int]:
    """Smallest block of <p, q> containing both points of ``pair``."""
    a = pair[0]
    for blk in block_system_containing(p, q, pair):
        if a in blk:
            return blk
    raise AssertionError("point missing from block system")


def _scan_for_blocks(gens: np.ndarray):
    n = gens.shape[1]
    for x in range(1, n):
        roots = _kernels.minimal_block(gens, 0, x)
        if roots.size:
            return roots
    return None


def _long_cycle_blocks(gens: np.ndarray, cycle: np.ndarray):
    """Decide primitivity from a cycle of some element longer than n/2.

    If a proper block B contains the cycle's first point a, the exponents j
    with w^j(a) in B form a subgroup e*Z of Z_l. A subgroup with e = l would
    put the l cycle points in distinct blocks, which needs more than n/2
    blocks. So some prime r divides l/e, and then w^(l/r)(a) lies in B. One
    refinement per prime r settles it.
    """
    ln = cycle.shape[0]
    for r in _prime_factors(ln):
        roots = _kernels.minimal_block(gens, cycle[0], cycle[ln // r])
        if roots.size:
            return roots
    return None


def find_block_system(p: Permutation, q: Permutation) -> list[frozenset[int]] | None:
    """A nontrivial block system of transitive <p, q>, or None if primitive.

    Refines from the pairs (1, x) for every x, stopping at the first proper
    block found.
    """
    gens = _gens(p, q)
    _require_transitive(gens)
    roots = _scan_for_blocks(gens)
    return None if roots is None else _blocks_from_roots(roots)


def is_primitive(p: Permutation, q: Permutation) -> bool:
    return find_block_system(p, q) is None


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _is_prime(m: int) -> bool:
    return m >= 2 and _prime_factors(m) == [m]


# --- exact order: deterministic Schreier-Sims on tuples -------------------

def _mul(a, b):
    # a then b
    return tuple(b[x] for x in a)


def _inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "transversal", "done")

    def __init__(self, base, n):
        self.base = base
        self.gens = []
        self.transversal = {base: tuple(range(n))}
        self.done = set()


def _sift(levels, g, start):
    for i in range(start, len(levels)):
        lv = levels[i]
        beta = g[lv.base]
        u = lv.transversal.get(beta)
        if u is None:
            return g, i
        g = _mul(g, _inv(u))
    return g, len(levels)


def schreier_sims(generators, n: int, stop_at: int | None = None):
    """Base points and basic orbit lengths of <generators>.

    ``stop_at`` is an order the group cannot exceed; once the product of
    basic orbit lengths (a lower bound for the order at every stage) reaches
    it the chain is returned early.
    """
    ident = tuple(range(n))
    levels: list[_Level] = []

    def add(h, j):
        if j == len(levels):
            moved = next(x for x in range(n) if h[x] != x)
            levels.append(_Level(moved, n))
        levels[j].gens.append(h)

    for g in generators:
        g = tuple(g)
        if g == ident:
            continue
        h, j = _sift(levels, g, 0)
        if h != ident:
            add(h, j)

    def order_lb():
        return math.prod(len(lv.transversal) for lv in levels)

    changed = True
    while changed:
        changed = False
        for i in range(len(levels) - 1, -1, -1):
            lv = levels[i]
            sgens = [s for deeper in levels[i:] for s in deeper.gens]
            # orbit of the base point under every strong generator fixing earlier base points
            frontier = list(lv.transversal)
            while frontier:
                nxt = []
                for x in frontier:
                    ux = lv.transversal[x]
                    for s in sgens:
                        y = s[x]
                        if y not in lv.transversal:
                            lv.transversal[y] = _mul(ux, s)
                            nxt.append(y)
                frontier = nxt
            if stop_at is not None and order_lb() >= stop_at:
                return [lv.base for lv in levels], [len(lv.transversal) for lv in levels]
            for x, ux in list(lv.transversal.items()):
                for si, s in enumerate(sgens):
                    key = (x, id(s))
                    if key in lv.done:
                        continue
                    lv.done.add(key)
                    y = s[x]
                    sg = _mul(_mul(ux, s), _inv(lv.transversal[y]))
                    if sg == ident:
                        continue
                    h, j = _sift(levels, sg, i + 1)
                    if h != ident:
                        add(h, j)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return [lv.base for lv in levels], [len(lv.transversal) for lv in levels]


def exact_order_oracle(p: Permutation, q: Permutation, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """|<p, q>| from a stabilizer chain; exact, deterministic."""
    gens = _gens(p, q)
    n = gens.shape[1]
    if n > limit:
        raise OracleLimitExceeded("n=%d exceeds oracle limit %d" % (n, limit))
    # the order is at most n!, or n!/2 when both generators are even
    cap = math.factorial(n)
    if is_even(p) and is_even(q) and n > 1:
        cap //= 2
    _, orbit_lengths = schreier_sims([tuple(g.tolist()) for g in gens], n, stop_at=cap)
    return math.prod(orbit_lengths)


# --- classification --------------------------------------------------------

@dataclass
class GroupClassification:
    verdict: Verdict
    orbit_sizes: list[int]
    block_system: list[list[int]] | None = None
    certificate: dict | None = None
    words_tried: int = 0
    order: int | None = None
    evidence: str = ""

    def to_dict(self) -> dict:
        d = {
            "verdict": self.verdict.value,
            "orbit_sizes": self.orbit_sizes,
            "words_tried": self.words_tried,
        }
        if self.block_system is not None:
            d["block_system"] = self.block_system
        if self.certificate is not None:
            cert = dict(self.certificate)
            cyc = cert.pop("cycle", None)
            if cyc is not None and len(cyc) <= CERT_CYCLE_PRINT_LIMIT:
                cert["cycle"] = [int(x) for x in cyc]
            d["certificate"] = cert
        if self.order is not None:
            d["order"] = str(self.order)
        if self.evidence:
            d["evidence"] = self.evidence
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _block_list(roots) -> list[list[int]]:
    return [sorted(b) for b in _blocks_from_roots(roots)]


def _jordan_witness(lengths: np.ndarray, n: int):
    """A prime cycle length r <= n-3 occurring once and dividing no other length.

    Returns (r, lcm of the other lengths) or None. Raising the element to that
    lcm leaves exactly one r-cycle.
    """
    counts = np.bincount(lengths)
    present = np.flatnonzero(counts)
    for r in present[::-1]:
        r = int(r)
        if r > n - 3 or counts[r] != 1 or not _is_prime(r):
            continue
        if any(int(x) % r == 0 for x in present if x != r):
            continue
        other = math.lcm(*(int(x) for x in present if x != r)) if len(present) > 1 else 1
        return r, other
    return None


def _candidates(gens: np.ndarray, budget: int, rng: RandomSource):
    """Yield (label, element): p, q, then ``budget`` product-replacement elements.

    Product replacement keeps five slots seeded with p, q, p, q, p. Each step
    replaces a slot x_i by x_i x_j or x_j x_i and multiplies an accumulator by
    the new x_i; after a burn-in the accumulator is emitted once per step.
    Every step costs two O(n) compositions.
    """
    yield "p", gens[0]
    yield "q", gens[1]
    slots = [gens[k % 2].copy() for k in range(PR_SLOTS)]
    acc = np.arange(gens.shape[1], dtype=gens.dtype)
    for step in range(PR_BURN_IN + budget):
        i, j = rng.gen.choice(PR_SLOTS, size=2, replace=False)
        if rng.gen.integers(2):
            slots[i] = slots[j][slots[i]]
        else:
            slots[i] = slots[i][slots[j]]
        acc = slots[i][acc]
        if step >= PR_BURN_IN:
            yield "pr%d" % (step - PR_BURN_IN + 1), acc


def classify(
    p: Permutation,
    q: Permutation,
    mode: str = "certificate",
    budget: int = DEFAULT_BUDGET,
    rng: RandomSource | None = None,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
    block_scan_limit: int = DEFAULT_BLOCK_SCAN_LIMIT,
    oracle_fallback: int = CERT_ORACLE_FALLBACK,
) -> GroupClassification:
    """Verdict on <p, q>; see the module docstring for the two modes.

    In certificate mode ``budget`` bounds the number of random group
    elements examined after p and q. A transitive group whose primitivity is
    established but which yields no prime-cycle certificate is reported as
    UnknownPrimitive, as is one whose primitivity could not be decided
    (n above ``block_scan_limit`` and no element with a cycle longer than
    n/2 turned up). Up to degree ``oracle_fallback`` a primitive group
    without a certificate is settled by the exact order instead.
    """
    gens = _gens(p, q)
    n = gens.shape[1]
    if mode not in ("exact", "certificate"):
        raise ValueError("mode must be 'exact' or 'certificate'")
    if mode == "exact" and n > oracle_limit:
        raise OracleLimitExceeded("n=%d exceeds oracle limit %d" % (n, oracle_limit))

    labels, k = _kernels.orbit_labels(gens)
    sizes = sorted(np.bincount(labels, minlength=k).tolist(), reverse=True)
    if k > 1:
        return GroupClassification(Verdict.INTRANSITIVE, sizes)

    if n <= 2:
        # transitive of degree <= 2 is the whole of S_n
        return GroupClassification(Verdict.SYMMETRIC, sizes, order=math.factorial(n),
                                   evidence="degree <= 2")

    if mode == "exact":
        roots = _scan_for_blocks(gens)
        if roots is not None:
            return GroupClassification(Verdict.IMPRIMITIVE, sizes, block_system=_block_list(roots))
        order = exact_order_oracle(p, q, limit=oracle_limit)
        full = math.factorial(n)
        if order == full:
            v = Verdict.SYMMETRIC
        elif order == full // 2:
            v = Verdict.ALTERNATING
        else:
            v = Verdict.PRIMITIVE_PROPER
        return GroupClassification(v, sizes, order=order, evidence="exact order")

    if rng is None:
        rng = RandomSource(0)

    primitive = None
    witness = None
    tried = 0
    odd = False
    long_cycles = []
    for word, w in _candidates(gens, budget, rng):
        tried += 1
        _, lengths, heads = _kernels.cycle_labels(w)
        if tried <= 2:
            odd = odd or (n - len(lengths)) % 2 == 1
        longest = int(np.argmax(lengths))
        ln = int(lengths[longest])
        if primitive is None and 2 * ln > n:
            if _is_prime(ln):
                # a prime cycle longer than n/2 cannot sit inside a proper block
                # nor spread over more than n/2 blocks
                primitive = "prime cycle of length %d" % ln
            else:
                long_cycles.append((len(_prime_factors(ln)), tried, w, int(heads[longest])))

        if witness is None:
            found = _jordan_witness(lengths, n)
            if found is not None:
                r, power = found
                head = int(heads[np.flatnonzero(lengths == r)[0]])
                cyc = _kernels.cycle_through(w, head)
                # w^power rotates this cycle by power mod r
                rcycle = cyc[(np.arange(r) * (power % r)) % r] + 1
                witness = {"prime": r, "power": str(power), "word": word, "cycle": rcycle}

        # p and q are both looked at before the first block test
        if primitive is None and long_cycles and tried >= 2:
            _, _, lw, head = min(long_cycles, key=lambda c: c[:2])
            long_cycles.clear()
            cyc = _kernels.cycle_through(lw, head)
            roots = _long_cycle_blocks(gens, cyc)
            if roots is not None:
                return GroupClassification(Verdict.IMPRIMITIVE, sizes, block_system=_block_list(roots),
                                           words_tried=tried)
            primitive = "long cycle of length %d" % len(cyc)

        if primitive is not None and witness is not None:
            break

    if tried < 2 and not odd:
        # the loop stopped at p; q's parity still counts
        odd = (n - len(_kernels.cycle_labels(gens[1])[1])) % 2 == 1
    top = Verdict.SYMMETRIC if odd else Verdict.ALTERNATING
    if primitive is None:
        if n > block_scan_limit:
            return GroupClassification(Verdict.UNKNOWN_PRIMITIVE, sizes, certificate=witness,
                                       words_tried=tried, evidence="primitivity undecided")
        roots = _scan_for_blocks(gens)
        if roots is not None:
            return GroupClassification(Verdict.IMPRIMITIVE, sizes, block_system=_block_list(roots),
                                       words_tried=tried)
        primitive = "full block scan"
    if witness is not None:
        return GroupClassification(top, sizes, certificate=dict(witness, primitivity=primitive),
                                   words_tried=tried)
    if n <= oracle_fallback:
        order = exact_order_oracle(p, q, limit=oracle_fallback)
        full = math.factorial(n)
        v = {full: Verdict.SYMMETRIC, full // 2: Verdict.ALTERNATING}.get(order, Verdict.PRIMITIVE_PROPER)
        return GroupClassification(v, sizes, order=order, words_tried=tried,
                                   evidence="primitive (%s), exact order" % primitive)
    return GroupClassification(Verdict.UNKNOWN_PRIMITIVE, sizes, words_tried=tried,
                               evidence="primitive (%s), no prime-cycle certificate" % primitive)
