"""Permutations of {1, ..., n}, cycle types and conjugacy-class counting.

Points are 1-based at every public boundary. Internally a permutation is a
read-only 0-based ``int32`` array, so ``p.array[i]`` is the image of point
``i + 1`` minus one.

Products act on the right, as in ``x^(gh) = (x^g)^h``: ``compose(p, q)``
applies ``p`` first and then ``q``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import _kernels

# point indices; int32 halves memory traffic in the kernels
INDEX = np.int32


class PermutationError(ValueError):
    pass


class Permutation:
    """An immutable bijection on {1, ..., n}."""

    __slots__ = ("_a", "__dict__")

    def __init__(self, images: Sequence[int] | np.ndarray, *, zero_based: bool = False):
        a = np.array(images, dtype=np.int64)
        if a.ndim != 1 or a.shape[0] == 0:
            raise PermutationError("a permutation needs at least one point")
        if not zero_based:
            a -= 1
        n = a.shape[0]
        if a.min() < 0 or a.max() >= n or np.bincount(a, minlength=n).max() != 1:
            raise PermutationError("images are not a bijection on 1..%d" % n)
        a = a.astype(INDEX)
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _trusted(cls, a: np.ndarray) -> "Permutation":
        # skips the bijection check; for arrays built by this package
        p = cls.__new__(cls)
        a = np.asarray(a, dtype=INDEX)
        a.setflags(write=False)
        p._a = a
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(np.arange(n, dtype=INDEX))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        a = np.arange(n, dtype=INDEX)
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 1 <= x <= n:
                    raise PermutationError("point %d outside 1..%d" % (x, n))
                if x in seen:
                    raise PermutationError("point %d appears twice" % x)
                seen.add(x)
            for i, x in enumerate(cyc):
                a[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls._trusted(a)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Read ``"2 1 4 3"`` (image list) or ``"(1 2)(3 4)"`` (cycles).

        Cycle notation needs ``n`` unless the largest mentioned point is n.
        """
        text = text.strip()
        if text.startswith("("):
            cycles = [
                [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
                for body in re.findall(r"\(([^()]*)\)", text)
            ]
            if n is None:
                n = max((max(c) for c in cycles if c), default=1)
            return cls.from_cycles([c for c in cycles if c], n)
        images = [int(x) for x in re.split(r"[\s,]+", text) if x]
        p = cls(images)
        if n is not None and p.n != n:
            raise PermutationError("expected %d images, got %d" % (n, p.n))
        return p

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """0-based read-only image array."""
        return self._a

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image list: ``images[i - 1]`` is the image of ``i``."""
        return tuple(int(x) + 1 for x in self._a)

    def __call__(self, x: int) -> int:
        return int(self._a[x - 1]) + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash(self._a.tobytes())

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, e: int) -> "Permutation":
        return power(self, e)

    @cached_property
    def _cycles(self):
        return _kernels.cycle_labels(self._a)

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point (1-based)."""
        _, lengths, heads = self._cycles
        out = []
        for h, ln in zip(heads.tolist(), lengths.tolist()):
            if ln == 1 and not include_fixed:
                continue
            cyc = [h]
            x = int(self._a[h])
            while x != h:
                cyc.append(x)
                x = int(self._a[x])
            out.append(tuple(v + 1 for v in cyc))
        return out

    def fixed_points(self) -> frozenset[int]:
        return frozenset((np.flatnonzero(self._a == np.arange(self.n)) + 1).tolist())

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(self.n)))

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        if self.n <= 20:
            return "Permutation(%s, n=%d)" % (self, self.n)
        return "Permutation(<n=%d>)" % self.n

    def __reduce__(self):
        return (Permutation._trusted, (np.array(self._a),))


def _check_same_n(p: Permutation, q: Permutation):
    if p.n != q.n:
        raise PermutationError("permutations act on %d and %d points" % (p.n, q.n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``: the image of x is ``q(p(x))``."""
    _check_same_n(p, q)
    return Permutation._trusted(q.array[p.array])


def inverse(p: Permutation) -> Permutation:
    inv = np.empty_like(p.array)
    inv[p.array] = np.arange(p.n, dtype=INDEX)
    return Permutation._trusted(inv)


def conjugate(p: Permutation, s: Permutation) -> Permutation:
    """``s^-1 p s``, so that fix(p^s) = fix(p)^s."""
    _check_same_n(p, s)
    out = np.empty_like(p.array)
    # s^-1 p s sends s(x) to s(p(x))
    out[s.array] = s.array[p.array]
    return Permutation._trusted(out)


def power(p: Permutation, e: int) -> Permutation:
    """``p**e`` for any integer e, computed cycle by cycle."""
    labels, lengths, heads = p._cycles
    out = np.empty_like(p.array)
    for h, ln in zip(heads.tolist(), lengths.tolist()):
        cyc = [h]
        x = int(p.array[h])
        while x != h:
            cyc.append(x)
            x = int(p.array[x])
        cyc = np.array(cyc, dtype=INDEX)
        out[cyc] = np.roll(cyc, -(e % ln))
    return Permutation._trusted(out)


def parity(p: Permutation) -> str:
    """``"even"`` or ``"odd"``; even iff n minus the number of cycles is even."""
    return "even" if (p.n - len(p._cycles[1])) % 2 == 0 else "odd"


def is_even(p: Permutation) -> bool:
    return (p.n - len(p._cycles[1])) % 2 == 0


@dataclass(frozen=True)
class CycleType:
    """Counts ``c_j`` of j-cycles, stored sparsely as sorted (j, c_j) pairs."""

    n: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        total = 0
        last = 0
        for j, c in self.counts:
            if j <= last or c <= 0:
                raise PermutationError("counts must be sorted with positive entries")
            last = j
            total += j * c
        if total != self.n or self.n < 1:
            raise PermutationError("cycle lengths sum to %d, expected n=%d" % (total, self.n))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], n: int | None = None) -> "CycleType":
        items = tuple(sorted((int(j), int(c)) for j, c in counts.items() if c))
        if any(j < 1 for j, _ in items):
            raise PermutationError("cycle lengths must be positive")
        if n is None:
            n = sum(j * c for j, c in items)
        return cls(n, items)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> "CycleType":
        counts: dict[int, int] = {}
        for ln in lengths:
            counts[ln] = counts.get(ln, 0) + 1
        return cls.from_counts(counts)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "CycleType":
        """Read ``"1^3,2^2,5"``; repeated lengths accumulate."""
        counts: dict[int, int] = {}
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if m is None:
                raise PermutationError("bad cycle-type token %r" % tok)
            j = int(m.group(1))
            c = int(m.group(2)) if m.group(2) is not None else 1
            counts[j] = counts.get(j, 0) + c
        t = cls.from_counts(counts)
        if n is not None and t.n != n:
            raise PermutationError("type %s has degree %d, expected %d" % (text, t.n, n))
        return t

    @classmethod
    def identity(cls, n: int) -> "CycleType":
        return cls(n, ((1, n),))

    def c(self, j: int) -> int:
        for jj, cc in self.counts:
            if jj == j:
                return cc
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def num_cycles(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def lengths(self) -> tuple[int, ...]:
        """Sorted multiset of cycle lengths, fixed points included."""
        return tuple(j for j, c in self.counts for _ in range(c))

    @property
    def order(self) -> int:
        return math.lcm(*(j for j, _ in self.counts))

    @property
    def is_even(self) -> bool:
        return (self.n - self.num_cycles) % 2 == 0

    def representative(self) -> Permutation:
        """Cycles filled with consecutive points, shortest cycles first."""
        cycles = []
        start = 1
        for j in self.lengths:
            cycles.append(range(start, start + j))
            start += j
        return Permutation.from_cycles(cycles, self.n)

    def __str__(self):
        return ",".join("%d^%d" % (j, c) for j, c in self.counts)

    def __lt__(self, other: "CycleType"):
        return (self.n, self.lengths) < (other.n, other.lengths)


def cycle_type_of(p: Permutation) -> CycleType:
    counts = _kernels.cycle_length_counts(p.array)
    nz = np.flatnonzero(counts)
    return CycleType(p.n, tuple((int(j), int(counts[j])) for j in nz))


def order_of(p: Permutation) -> int:
    return math.lcm(*set(p._cycles[1].tolist()))


def class_size(t: CycleType) -> int:
    """n! / prod_j (j^c_j c_j!), exactly."""
    denom = 1
    for j, c in t.counts:
        denom *= j**c * math.factorial(c)
    return math.factorial(t.n) // denom


def class_size_lower_bound(t: CycleType) -> Fraction:
    """n! / n^c, a lower bound for the class size when the type has c cycles."""
    return Fraction(math.factorial(t.n), t.n**t.num_cycles)


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def all_cycle_types(n: int) -> list[CycleType]:
    return sorted(CycleType.from_lengths(p) for p in partitions(n))


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for images in permutations(range(n)):
        yield Permutation._trusted(np.array(images, dtype=INDEX))
