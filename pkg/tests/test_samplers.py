import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from oracles import all_perms, cycle_lengths
from symgen.perm import CycleType, Permutation, all_cycle_types, class_size, cycle_type_of, order_of
from symgen.samplers import (
    EmptyOrder,
    RandomSource,
    choose_class,
    enumerate_types_of_order,
    iter_types_of_order,
    sample_class,
    sample_conjugate,
    sample_order_m,
    sample_uniform,
)

ALPHA = 1e-3


def chi_ok(counter, support):
    obs = [counter[x] for x in support]
    assert sum(obs) == sum(counter.values()), "draw outside the support"
    return chisquare(obs).pvalue > ALPHA


def draws(fn, k, seed=1):
    return Counter(fn(RandomSource(seed, i)).images for i in range(k))


def test_random_source_reproducible():
    a = RandomSource(7, 3)
    b = RandomSource(7, 3)
    assert [a.randbelow(10**30) for _ in range(5)] == [b.randbelow(10**30) for _ in range(5)]
    assert sample_uniform(50, RandomSource(1, 2)) == sample_uniform(50, RandomSource(1, 2))
    assert sample_uniform(50, RandomSource(1, 2)) != sample_uniform(50, RandomSource(1, 3))


def test_randbelow_big_bound_is_uniform():
    rng = RandomSource(3)
    bound = 3 * 2**70
    xs = [rng.randbelow(bound) for _ in range(30000)]
    assert 0 <= min(xs) and max(xs) < bound
    bins = Counter(x * 3 // bound for x in xs)
    assert chisquare([bins[i] for i in range(3)]).pvalue > ALPHA


def test_uniform_examples():
    assert sample_uniform(1, RandomSource(0)).is_identity()
    c = draws(lambda r: sample_uniform(3, r), 60000)
    support = [tuple(x + 1 for x in a) for a in all_perms(3)]
    for s in support:
        assert abs(c[s] - 10000) < 3 * math.sqrt(60000 * (1 / 6) * (5 / 6))
    assert chi_ok(c, support)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_class_sampler_uniform_on_every_class(n):
    for t in all_cycle_types(n):
        support = [tuple(x + 1 for x in a) for a in all_perms(n) if cycle_lengths(a) == t.lengths]
        if len(support) == 1:
            assert sample_class(t, RandomSource(0)).images == support[0]
            continue
        c = draws(lambda r: sample_class(t, r), 30000, seed=n)
        assert chi_ok(c, support), str(t)


def test_class_sampler_examples():
    assert sample_class(CycleType.identity(6), RandomSource(0)).is_identity()
    c = draws(lambda r: sample_class(CycleType.parse("2^2"), r), 30000)
    assert len(c) == 3
    for v in c.values():
        assert abs(v - 10000) < 3 * math.sqrt(30000 * (1 / 3) * (2 / 3))


@settings(max_examples=50)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=12), st.integers(0, 2**32))
def test_class_sampler_hits_the_type(lengths, seed):
    t = CycleType.from_lengths(lengths)
    assert cycle_type_of(sample_class(t, RandomSource(seed))) == t


def test_conjugate_sampler():
    assert sample_conjugate(Permutation.identity(5), RandomSource(0)).is_identity()
    p = Permutation.parse("(1 2)", 3)
    c = draws(lambda r: sample_conjugate(p, r), 30000)
    assert len(c) == 3
    for v in c.values():
        assert abs(v - 10000) < 3 * math.sqrt(30000 * (1 / 3) * (2 / 3))
    t = CycleType.parse("1,2^2,3")
    for i in range(50):
        q = sample_conjugate(t.representative(), RandomSource(0, i))
        assert cycle_type_of(q) == t


def test_conjugate_sampler_matches_class_sampler():
    t = CycleType.parse("1^2,3")
    a = draws(lambda r: sample_class(t, r), 20000, seed=1)
    b = draws(lambda r: sample_conjugate(t.representative(), r), 20000, seed=2)
    support = sorted(set(a) | set(b))
    assert len(support) == 20
    from scipy.stats import chi2_contingency

    table = np.array([[a[s] for s in support], [b[s] for s in support]])
    assert chi2_contingency(table).pvalue > ALPHA


def test_order_table_examples():
    t = enumerate_types_of_order(4, 2)
    assert [(str(x), w) for x, w in t.entries] == [("1^2,2^1", 6), ("2^2", 3)]
    assert t.total == 9
    t = enumerate_types_of_order(5, 6)
    assert [(str(x), w) for x, w in t.entries] == [("2^1,3^1", 20)]
    assert not enumerate_types_of_order(3, 4)
    t = enumerate_types_of_order(7, 1)
    assert [(str(x), w) for x, w in t.entries] == [("1^7", 1)]
    assert enumerate_types_of_order(4, 2).to_csv() == "type,weight\n\"1^2,2^1\",6\n2^2,3\n"


@pytest.mark.parametrize("n", range(1, 9))
def test_order_tables_match_enumeration(n):
    by_order = Counter(math.lcm(*cycle_lengths(a)) for a in all_perms(n))
    for m in range(1, 2 * n * n):
        table = enumerate_types_of_order(n, m)
        assert table.total == by_order.get(m, 0)
        assert all(t.order == m for t, _ in table.entries)
        assert sum(w for _, w in table.entries) == table.total


def test_order_types_at_large_n_against_partition_filter():
    # unrestricted partitions of 30 filtered by order
    types = all_cycle_types(30)
    for m in (2, 6, 12, 30, 60, 7):
        want = sorted(str(t) for t in types if t.order == m)
        got = sorted(str(t) for t, _ in enumerate_types_of_order(30, m).entries)
        assert got == want


def test_order_sampler_examples():
    c = Counter(str(cycle_type_of(sample_order_m(4, 2, RandomSource(5, i)))) for i in range(90000))
    p = c["1^2,2^1"] / 90000
    assert abs(p - 6 / 9) < 3 * math.sqrt((6 / 9) * (3 / 9) / 90000)
    for i in range(20):
        assert str(cycle_type_of(sample_order_m(5, 6, RandomSource(0, i)))) == "2^1,3^1"
    c = Counter(str(cycle_type_of(sample_order_m(6, 6, RandomSource(2, i)))) for i in range(20000))
    assert chisquare([c["6^1"], c["1^1,2^1,3^1"]]).pvalue > ALPHA
    with pytest.raises(EmptyOrder):
        sample_order_m(3, 4, RandomSource(0))


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (5, 6), (4, 4), (5, 3)])
def test_order_sampler_uniform(n, m):
    support = [tuple(x + 1 for x in a) for a in all_perms(n) if math.lcm(*cycle_lengths(a)) == m]
    c = draws(lambda r: sample_order_m(n, m, r), 30000, seed=m)
    assert chi_ok(c, support)


def test_choose_class_exact_inversion():
    table = enumerate_types_of_order(100, 2)
    seen = Counter(str(choose_class(table, RandomSource(4, i))) for i in range(2000))
    # the involution class with the most mass has about sqrt(100) fixed points
    mode = max(table.entries, key=lambda e: e[1])[0]
    assert abs(mode.c(1) - 10) <= 2
    assert seen[str(mode)] > 0
