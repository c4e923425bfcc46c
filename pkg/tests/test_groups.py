import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_perms, equipartitions, group_order, orbit_sizes
from symgen.groups import (
    NotTransitive,
    OracleLimitExceeded,
    Verdict,
    block_system_containing,
    classify,
    exact_order_oracle,
    find_block_system,
    is_primitive,
    is_transitive,
    minimal_block_containing,
    orbit_census,
    schreier_sims,
)
from symgen.perm import CycleType, Permutation, all_cycle_types, is_even
from symgen.samplers import RandomSource, sample_class, sample_uniform

P = Permutation.parse


def tup(p):
    return tuple(int(x) for x in p.array)


def has_block_system(a, b):
    n = len(a)
    for k in range(2, n):
        if n % k:
            continue
        for part in equipartitions(n, k):
            if all(frozenset(frozenset(g[x] for x in c) for c in part) == part for g in (a, b)):
                return True
    return False


def oracle_verdict(a, b):
    n = len(a)
    if len(orbit_sizes([a, b])) > 1:
        return Verdict.INTRANSITIVE
    if n <= 2:
        return Verdict.SYMMETRIC
    if has_block_system(a, b):
        return Verdict.IMPRIMITIVE
    o = group_order([a, b])
    if o == math.factorial(n):
        return Verdict.SYMMETRIC
    if 2 * o == math.factorial(n):
        return Verdict.ALTERNATING
    return Verdict.PRIMITIVE_PROPER


def test_census_examples():
    e = Permutation.identity(4)
    c = orbit_census(e, e)
    assert c.N(1) == 4 and c.small_orbit_total == 4
    k = orbit_census(P("(1 2)(3 4)"), P("(1 3)(2 4)"))
    assert k.counts == {4: 1} and k.small_orbit_total == 0 and k.two_cycle_orbit_count == 0
    s = P("(1 2)(3 4)")
    c = orbit_census(s, s)
    assert c.N(2) == 2 and c.small_orbit_total == 2
    # all-2-cycle orbits are counted once they fall below the size bound
    assert orbit_census(s, s, two_cycle_bound=3).two_cycle_orbit_count == 2
    big = Permutation.from_cycles([(2 * i + 1, 2 * i + 2) for i in range(50)], 1000)
    assert orbit_census(big, big).two_cycle_orbit_count == 50


@settings(max_examples=100)
@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))))
def test_census_matches_flood_fill(pair):
    a, b = pair
    p, q = Permutation(a, zero_based=True), Permutation(b, zero_based=True)
    c = orbit_census(p, q)
    sizes = orbit_sizes([tuple(a), tuple(b)])
    assert c.orbit_sizes == sizes
    assert sum(k * v for k, v in c.counts.items()) == len(a)
    assert c.small_orbit_total == sum(1 for s in sizes if s <= len(a) / 2)
    assert (c.small_orbit_total == 0) == is_transitive(p, q)


def test_transitivity_examples():
    n = 7
    assert is_transitive(P("(1 2 3 4 5 6 7)"), Permutation.identity(n))
    assert not is_transitive(Permutation.identity(n), Permutation.identity(n))
    assert not is_transitive(P("(1 2)", 4), P("(3 4)", 4))


def test_too_many_cycles_never_transitive():
    rng = RandomSource(11)
    for i in range(300):
        n = int(rng.gen.integers(2, 30))
        # random types whose cycle counts add to more than n + 1
        c1 = int(rng.gen.integers(1, n + 1))
        c2 = int(rng.gen.integers(max(1, n + 2 - c1), n + 1)) if n + 2 - c1 <= n else n
        if c1 + c2 <= n + 1:
            continue
        t1 = random_type_with_cycles(n, c1, rng)
        t2 = random_type_with_cycles(n, c2, rng)
        assert not is_transitive(sample_class(t1, rng), sample_class(t2, rng))


def random_type_with_cycles(n, c, rng):
    cuts = sorted(rng.gen.choice(np.arange(1, n), size=c - 1, replace=False).tolist()) if c > 1 else []
    bounds = [0] + cuts + [n]
    return CycleType.from_lengths([bounds[i + 1] - bounds[i] for i in range(c)])


def test_block_examples():
    c4, e = P("(1 2 3 4)"), Permutation.identity(4)
    assert not is_primitive(c4, e)
    assert sorted(map(sorted, find_block_system(c4, e))) == [[1, 3], [2, 4]]
    assert is_primitive(P("(1 2 3)"), P("(1 2)", 3))
    blocks = find_block_system(P("(1 2)(3 4)"), P("(1 3)(2 4)"))
    assert blocks is not None and len(blocks) == 2 and all(len(b) == 2 for b in blocks)
    assert minimal_block_containing(c4, e, (1, 3)) == frozenset({1, 3})
    assert minimal_block_containing(c4, e, (1, 2)) == frozenset({1, 2, 3, 4})
    assert len(block_system_containing(c4, e, (2, 4))) == 2
    with pytest.raises(NotTransitive):
        is_primitive(P("(1 2)", 4), P("(3 4)", 4))


def test_order_examples():
    assert exact_order_oracle(P("(1 2 3 4 5)"), P("(1 2)", 5)) == 120
    assert exact_order_oracle(P("(1 2 3)"), P("(1 2 3)")) == 3
    assert exact_order_oracle(P("(1 2)(3 4)"), P("(1 3)(2 4)")) == 4
    with pytest.raises(OracleLimitExceeded):
        exact_order_oracle(Permutation.identity(13), Permutation.identity(13))
    assert exact_order_oracle(Permutation.identity(13), Permutation.identity(13), limit=13) == 1


def test_order_against_bfs_closure():
    rng = RandomSource(5)
    for i in range(300):
        n = int(rng.gen.integers(1, 8))
        p, q = sample_uniform(n, rng), sample_uniform(n, rng)
        assert exact_order_oracle(p, q) == group_order([tup(p), tup(q)])


def test_order_against_sympy():
    from sympy.combinatorics import Permutation as SP, PermutationGroup

    rng = RandomSource(6)
    for i in range(40):
        n = int(rng.gen.integers(8, 13))
        t = CycleType.parse(["2^4", "3^2,1^2", "4^2", "uniform"][i % 4].replace("uniform", "1^%d" % n)) \
            if i % 4 != 3 else None
        p = sample_uniform(n, rng)
        q = sample_class(CycleType.from_counts({2: n // 2}, None), rng) if n % 2 == 0 else sample_uniform(n, rng)
        if i % 3 == 0:
            # subgroup of a wreath product, to hit small orders too
            half = n // 2
            p = Permutation.from_cycles([range(1, half + 1)], n)
        want = PermutationGroup([SP(tup(p)), SP(tup(q))]).order()
        assert exact_order_oracle(p, q) == want


def test_schreier_sims_reaches_full_orders():
    for n in range(3, 13):
        cyc = list(range(1, n + 1))
        p = Permutation.from_cycles([cyc], n)
        assert exact_order_oracle(p, P("(1 2)", n)) == math.factorial(n)
        assert exact_order_oracle(p, p) == n


def test_classify_examples():
    assert classify(P("(1 2 3 4 5)"), P("(1 2)", 5), mode="exact").verdict is Verdict.SYMMETRIC
    assert classify(P("(1 2 3 4 5)"), P("(1 2)", 5)).verdict is Verdict.SYMMETRIC
    assert classify(P("(1 2 3)"), P("(1 2 3)"), mode="exact").verdict is Verdict.ALTERNATING
    assert classify(P("(1 2 3)"), P("(1 2 3)")).verdict is Verdict.ALTERNATING
    k = classify(P("(1 2)(3 4)"), P("(1 3)(2 4)"))
    assert k.verdict is Verdict.IMPRIMITIVE and k.block_system
    assert classify(P("(1 2)", 4), P("(3 4)", 4)).verdict is Verdict.INTRANSITIVE
    with pytest.raises(OracleLimitExceeded):
        classify(Permutation.identity(20), Permutation.identity(20), mode="exact")


def test_classification_json():
    r = classify(P("(1 2 3 4 5)"), P("(1 2)", 5))
    d = r.to_dict()
    assert set(d) >= {"verdict", "orbit_sizes", "words_tried"}
    assert d["certificate"]["prime"] == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_exact_mode_exhaustive(n):
    perms = [Permutation(a, zero_based=True) for a in all_perms(n)]
    for p in perms:
        for q in perms:
            got = classify(p, q, mode="exact")
            assert got.verdict is oracle_verdict(tup(p), tup(q)), (p, q)
            if got.verdict.at_least_alternating and n >= 2:  # S_1 = A_1
                assert (got.verdict is Verdict.SYMMETRIC) == (not (is_even(p) and is_even(q)))


def test_exact_mode_exhaustive_six_up_to_conjugacy():
    # the verdict only depends on the pair up to simultaneous conjugation
    perms = [Permutation(a, zero_based=True) for a in all_perms(6)]
    for t in all_cycle_types(6):
        p = t.representative()
        for q in perms:
            assert classify(p, q, mode="exact").verdict is oracle_verdict(tup(p), tup(q))


def test_certificate_never_contradicts_exact():
    disagreements = Counter()
    for i in range(10000):
        rng = RandomSource(2024, i)
        n = 8 + i % 5
        p, q = sample_uniform(n, rng), sample_uniform(n, rng)
        ex = classify(p, q, mode="exact").verdict
        ce = classify(p, q, mode="certificate", rng=rng).verdict
        if ce is not ex:
            assert ce is Verdict.UNKNOWN_PRIMITIVE, (p, q, ex, ce)
            disagreements[ex] += 1
    assert sum(disagreements.values()) < 200


def test_certificate_on_structured_groups():
    n = 16
    # S_4 wr S_4 style: imprimitive, must never certify
    rng = RandomSource(1)
    blocks = [range(4 * i + 1, 4 * i + 5) for i in range(4)]
    a = Permutation.from_cycles([tuple(b) for b in blocks], n)
    b = Permutation.from_cycles([(1, 5, 9, 13), (2, 6, 10, 14), (3, 7, 11, 15), (4, 8, 12, 16)], n)
    r = classify(a, b, rng=rng)
    assert r.verdict is Verdict.IMPRIMITIVE
    # a prime n-cycle with a 2-cycle generates S_n at any size
    n = 10007
    c = Permutation.from_cycles([range(1, n + 1)], n)
    assert classify(c, P("(1 2)", n), rng=rng).verdict is Verdict.SYMMETRIC
    # the n-cycle with a transposition (1, 1 + x) is imprimitive when gcd(x, n) > 1
    n = 1000
    c = Permutation.from_cycles([range(1, n + 1)], n)
    assert classify(c, P("(1 5)", n), rng=rng).verdict is Verdict.IMPRIMITIVE
    assert classify(c, P("(1 4)", n), rng=rng).verdict is Verdict.SYMMETRIC


def test_parity_rule_in_certificate_mode():
    for i in range(300):
        rng = RandomSource(77, i)
        n = int(rng.gen.integers(5, 60))
        p, q = sample_uniform(n, rng), sample_uniform(n, rng)
        v = classify(p, q, rng=rng).verdict
        if v.at_least_alternating:
            assert (v is Verdict.SYMMETRIC) == (not (is_even(p) and is_even(q)))


def test_order_two_pairs_never_certified():
    for n in range(4, 40):
        for i in range(20):
            rng = RandomSource(n, i)
            t = CycleType.from_counts({2: 1 + i % (n // 2), 1: n - 2 * (1 + i % (n // 2))}, n)
            v = classify(sample_class(t, rng), sample_class(t, rng), rng=rng).verdict
            assert not v.at_least_alternating
