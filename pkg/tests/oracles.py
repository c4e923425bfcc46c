"""Brute-force references written without the package.

Permutations are plain 0-based tuples, products act left to right, and
nothing here is clever: closures by breadth-first search, orbits by
flood fill, counts by listing everything.
"""

from collections import deque
from itertools import combinations, permutations


def all_perms(n):
    return list(permutations(range(n)))


def mul(a, b):
    """a then b."""
    return tuple(b[x] for x in a)


def cycle_lengths(a):
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if not seen[i]:
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                ln += 1
            out.append(ln)
    return tuple(sorted(out))


def group_order(gens):
    n = len(gens[0])
    e = tuple(range(n))
    seen = {e}
    todo = deque([e])
    while todo:
        g = todo.popleft()
        for s in gens:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                todo.append(h)
    return len(seen)


def orbit_sizes(gens):
    n = len(gens[0])
    seen = [False] * n
    sizes = []
    for i in range(n):
        if seen[i]:
            continue
        seen[i] = True
        stack, size = [i], 0
        while stack:
            x = stack.pop()
            size += 1
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        sizes.append(size)
    return sorted(sizes, reverse=True)


def class_elements(lengths, n):
    lengths = tuple(sorted(lengths))
    return [a for a in all_perms(n) if cycle_lengths(a) == lengths]


def transitive_pairs(lengths1, lengths2):
    n = sum(lengths1)
    c1, c2 = class_elements(lengths1, n), class_elements(lengths2, n)
    return sum(1 for a in c1 for b in c2 if len(orbit_sizes([a, b])) == 1)


def invariant_ksets(a, k):
    return sum(1 for s in combinations(range(len(a)), k) if {a[x] for x in s} == set(s))


def equipartitions(n, k):
    m = n // k

    def rec(rest):
        if not rest:
            yield []
            return
        first, others = rest[0], rest[1:]
        for mates in combinations(others, m - 1):
            cell = frozenset((first,) + mates)
            for tail in rec([x for x in others if x not in cell]):
                yield [cell] + tail

    return [frozenset(p) for p in rec(list(range(n)))]


def invariant_equipartitions(a, k):
    out = 0
    for part in equipartitions(len(a), k):
        if frozenset(frozenset(a[x] for x in cell) for cell in part) == part:
            out += 1
    return out
