"""Compiled inner loops.

Image arrays are 0-based and int32 (any integer dtype compiles). Nothing here validates input;
callers in the public modules do that.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def cycle_labels(perm):
    """Label each point by its cycle and return (labels, lengths, heads).

    Cycles are numbered in order of their smallest point.
    """
    n = perm.shape[0]
    labels = np.full(n, -1, dtype=np.int32)
    lengths = np.empty(n, dtype=np.int64)
    heads = np.empty(n, dtype=np.int64)
    c = 0
    for i in range(n):
        if labels[i] >= 0:
            continue
        heads[c] = i
        j = i
        ln = 0
        while labels[j] < 0:
            labels[j] = c
            ln += 1
            j = perm[j]
        lengths[c] = ln
        c += 1
    return labels, lengths[:c], heads[:c]


@njit(cache=True)
def cycle_length_counts(perm):
    n = perm.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    counts = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        if seen[i]:
            continue
        j = i
        ln = 0
        while not seen[j]:
            seen[j] = True
            ln += 1
            j = perm[j]
        counts[ln] += 1
    return counts


@njit(cache=True)
def _find(parent, x):
    # path halving
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def orbit_labels(gens):
    """Connected components of the union of the functional graphs.

    ``gens`` is a 2-D array, one generator per row. Returns labels numbered
    by smallest point, and the number of orbits.
    """
    n = gens.shape[1]
    parent = np.arange(n).astype(gens.dtype)
    for g in range(gens.shape[0]):
        row = gens[g]
        for i in range(n):
            a = _find(parent, i)
            b = _find(parent, row[i])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    labels = np.empty(n, dtype=np.int32)
    remap = np.full(n, -1, dtype=np.int32)
    k = 0
    for i in range(n):
        r = _find(parent, i)
        if remap[r] < 0:
            remap[r] = k
            k += 1
        labels[i] = remap[r]
    return labels, k


@njit(cache=True)
def minimal_block(gens, a, b):
    """Finest block system of <gens> with a and b in the same block.

    Atkinson's refinement: every union queues one pair, each queued pair is
    pushed through each generator. Returns the root of every point, or an
    empty array as soon as a single block swallows all n points.
    """
    n = gens.shape[1]
    parent = np.arange(n).astype(gens.dtype)
    size = np.ones(n, dtype=np.int32)
    queue = np.empty(2 * n, dtype=gens.dtype)
    head = 0
    tail = 0
    if a != b:
        parent[b] = a
        size[a] = 2
        if n == 2:
            return np.empty(0, dtype=gens.dtype)
        queue[0] = a
        queue[1] = b
        tail = 2
    while head < tail:
        x = queue[head]
        y = queue[head + 1]
        head += 2
        for g in range(gens.shape[0]):
            u = _find(parent, gens[g, x])
            v = _find(parent, gens[g, y])
            if u != v:
                if size[u] < size[v]:
                    u, v = v, u
                parent[v] = u
                size[u] += size[v]
                if size[u] == n:
                    return np.empty(0, dtype=gens.dtype)
                queue[tail] = u
                queue[tail + 1] = v
                tail += 2
    roots = np.empty(n, dtype=gens.dtype)
    for i in range(n):
        roots[i] = _find(parent, i)
    return roots


@njit(cache=True)
def apply_word(gens, letters, n):
    """Image array of the product gens[letters[0]] * gens[letters[1]] * ...

    Products act left to right: x is sent through the first letter first.
    """
    out = np.empty(n, dtype=gens.dtype)
    m = letters.shape[0]
    for i in range(n):
        x = i
        for t in range(m):
            x = gens[letters[t], x]
        out[i] = x
    return out


@njit(cache=True)
def fill_cycles(points, slot_next):
    """Place shuffled points into cycle slots: points[s] -> points[next[s]]."""
    n = points.shape[0]
    out = np.empty(n, dtype=points.dtype)
    for s in range(n):
        out[points[s]] = points[slot_next[s]]
    return out


@njit(cache=True)
def cycle_through(perm, start):
    """Points of the cycle containing ``start``, in cycle order."""
    n = perm.shape[0]
    buf = np.empty(n, dtype=perm.dtype)
    buf[0] = start
    k = 1
    x = perm[start]
    while x != start:
        buf[k] = x
        k += 1
        x = perm[x]
    return buf[:k]
