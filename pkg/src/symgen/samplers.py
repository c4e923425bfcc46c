"""Uniform sampling in S_n: unconstrained, within a class, and of fixed order."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .perm import INDEX, CycleType, Permutation, class_size, conjugate


class EmptyOrder(ValueError):
    """No element of S_n has the requested order."""


class RandomSource:
    """A numpy generator keyed by (seed, stream).

    Streams are derived with ``SeedSequence(seed, spawn_key=(stream,))`` so
    trial ``i`` of an experiment draws the same numbers no matter which worker
    runs it.
    """

    def __init__(self, seed: int = 0, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self.gen = np.random.Generator(np.random.PCG64(ss))

    def substream(self, stream: int) -> "RandomSource":
        return RandomSource(self.seed, stream)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) for arbitrarily large bound."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound < 2**62:
            return int(self.gen.integers(0, bound))
        nbits = (bound - 1).bit_length()
        nbytes = (nbits + 7) // 8
        excess = nbytes * 8 - nbits
        while True:
            x = int.from_bytes(self.gen.bytes(nbytes), "little") >> excess
            if x < bound:
                return x

    def __repr__(self):
        return "RandomSource(seed=%d, stream=%d)" % (self.seed, self.stream)


def sample_uniform(n: int, rng: RandomSource) -> Permutation:
    return Permutation._trusted(rng.gen.permutation(n).astype(INDEX))


@lru_cache(maxsize=256)
def _slot_next(t: CycleType) -> np.ndarray:
    # slot s of the canonical representative maps to slot nxt[s]
    nxt = np.empty(t.n, dtype=INDEX)
    start = 0
    for j in t.lengths:
        nxt[start:start + j] = np.arange(start + 1, start + j + 1)
        nxt[start + j - 1] = start
        start += j
    nxt.setflags(write=False)
    return nxt


def sample_class(t: CycleType, rng: RandomSource) -> Permutation:
    """Uniform element of the class of ``t``.

    A uniformly shuffled point sequence is poured into the cycle slots of the
    canonical representative; every class element arises from the same number
    of shuffles.
    """
    pts = rng.gen.permutation(t.n).astype(INDEX)
    return Permutation._trusted(_kernels.fill_cycles(pts, _slot_next(t)))


def sample_conjugate(p: Permutation, rng: RandomSource) -> Permutation:
    return conjugate(p, sample_uniform(p.n, rng))


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class OrderMClassTable:
    n: int
    m: int
    entries: tuple[tuple[CycleType, int], ...]
    total: int

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["type", "weight"])
        for t, wt in self.entries:
            w.writerow([str(t), str(wt)])
        return buf.getvalue()


def iter_types_of_order(n: int, m: int):
    """Yield count maps {j: c_j} of the cycle types of S_n with order m.

    Depth-first over the divisors of m above 1 (largest first), choosing how
    many cycles of each length; fixed points fill whatever is left. A branch
    is cut when the lcm of the chosen lengths together with every remaining
    divisor can no longer reach m.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    divs = [d for d in _divisors(m) if 1 < d <= n][::-1]
    # lcm of divs[i:], the most the remaining lengths can contribute
    tail_lcm = [1] * (len(divs) + 1)
    for i in range(len(divs) - 1, -1, -1):
        tail_lcm[i] = math.lcm(divs[i], tail_lcm[i + 1])

    counts: dict[int, int] = {}

    def walk(i, remaining, cur_lcm):
        if math.lcm(cur_lcm, tail_lcm[i]) != m:
            return
        if i == len(divs):
            out = dict(counts)
            if remaining:
                out[1] = remaining
            yield out
            return
        d = divs[i]
        for c in range(remaining // d, -1, -1):
            if c:
                counts[d] = c
            else:
                counts.pop(d, None)
            yield from walk(i + 1, remaining - c * d, math.lcm(cur_lcm, d) if c else cur_lcm)
        counts.pop(d, None)

    yield from walk(0, n, 1)


def enumerate_types_of_order(n: int, m: int) -> OrderMClassTable:
    types = sorted(CycleType.from_counts(c, n) for c in iter_types_of_order(n, m))
    entries = tuple((t, class_size(t)) for t in types)
    return OrderMClassTable(n, m, entries, sum(w for _, w in entries))


_table_cache: dict[tuple[int, int], OrderMClassTable] = {}


def _cached_table(n: int, m: int) -> OrderMClassTable:
    key = (n, m)
    table = _table_cache.get(key)
    if table is None:
        table = _table_cache[key] = enumerate_types_of_order(n, m)
    return table


def choose_class(table: OrderMClassTable, rng: RandomSource) -> CycleType:
    """Pick an entry with probability weight/total by exact inversion."""
    if not table:
        raise EmptyOrder("S_%d has no element of order %d" % (table.n, table.m))
    u = rng.randbelow(table.total)
    for t, w in table.entries:
        if u < w:
            return t
        u -= w
    raise AssertionError("weights do not sum to total")


def sample_order_m(n: int, m: int, rng: RandomSource) -> Permutation:
    """Uniform element of order m: class by exact weight, then in-class."""
    return sample_class(choose_class(_cached_table(n, m), rng), rng)
