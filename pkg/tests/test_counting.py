import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laced.brute import brute_count_distinct_tuples, brute_count_subsets
from laced.counting import (
    LacedCounter,
    ResidueMultiset,
    count_k_subsets_mod_p,
    count_subsets_mod_p,
    count_table,
    laced_weight_multiset,
    remove_element,
)
from laced.errors import DomainError
from laced.modmath import LacedParams

PRIMES = [2, 3, 5, 7, 11, 13, 17]


def test_count_subsets_examples():
    assert count_subsets_mod_p(ResidueMultiset(3, (1, 2))).counts == (2, 1, 1)
    assert count_subsets_mod_p(ResidueMultiset(5, ())).counts == (1, 0, 0, 0, 0)
    assert count_subsets_mod_p(ResidueMultiset(5, (1, 2, 3, 4)))[0] == 4


def test_count_k_subsets_examples():
    D = ResidueMultiset(5, (1, 2, 3, 4))
    assert count_k_subsets_mod_p(D, 2)[0] == 2
    assert count_k_subsets_mod_p(D, 0).counts == (1, 0, 0, 0, 0)
    full = count_k_subsets_mod_p(D, 4)
    assert full.counts == (1, 0, 0, 0, 0)
    assert count_k_subsets_mod_p(D, 5).counts == (0,) * 5
    assert count_k_subsets_mod_p(ResidueMultiset(7, (1, 2, 6)), 3)[2] == 1


def test_laced_weight_multiset_examples():
    assert laced_weight_multiset(LacedParams.for_n(4), {1}).elements == (2, 3, 4)
    assert laced_weight_multiset(LacedParams.for_n(5)).elements == (1, 2, 3, 4, 0)
    assert laced_weight_multiset(LacedParams.for_n(4), {2, 4}).elements == (1, 3)
    with pytest.raises(DomainError):
        laced_weight_multiset(LacedParams.for_n(4), {5})


def test_residue_multiset_validation():
    with pytest.raises(DomainError):
        ResidueMultiset(6, (1,))
    with pytest.raises(DomainError):
        ResidueMultiset(5, (5,))
    assert ResidueMultiset.of(5, [7, -1], reduce=True).elements == (2, 4)


residue_sets = st.sampled_from(PRIMES).flatmap(
    lambda p: st.lists(st.integers(0, p - 1), max_size=16).map(lambda xs: ResidueMultiset(p, tuple(xs)))
)


@settings(max_examples=60, deadline=None)
@given(residue_sets)
def test_dp_matches_brute(D):
    table = count_subsets_mod_p(D)
    assert table.total() == 2 ** len(D)
    for b in range(D.p):
        assert table[b] == brute_count_subsets(D, b)


@settings(max_examples=60, deadline=None)
@given(residue_sets)
def test_sizes_partition_subsets(D):
    by_size = [count_k_subsets_mod_p(D, k) for k in range(len(D) + 1)]
    whole = count_subsets_mod_p(D)
    for k, t in enumerate(by_size):
        assert t.total() == math.comb(len(D), k)
    for b in range(D.p):
        assert sum(t[b] for t in by_size) == whole[b]


def test_k_subsets_match_distinct_tuples_seeded():
    rng = random.Random(7)
    for _ in range(80):
        p = rng.choice([5, 7, 11, 13])
        D = ResidueMultiset(p, tuple(rng.sample(range(p), rng.randint(0, min(p, 12)))))
        k = rng.randint(0, 5)
        table = count_k_subsets_mod_p(D, k)
        for b in range(p):
            assert math.factorial(k) * table[b] == brute_count_distinct_tuples(D, b, k)


@settings(max_examples=80, deadline=None)
@given(residue_sets, st.integers(0, 10**6))
def test_remove_element_inverts_add(D, pick):
    if D.p == 2 or not len(D):
        return
    d = D.elements[pick % len(D)]
    rest = list(D.elements)
    rest.remove(d)
    assert remove_element(count_table(D.p, D.elements), d, D.p) == count_table(D.p, rest)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 11, 16])
def test_laced_counter_matches_direct_dp(n):
    params = LacedParams.for_n(n)
    counter = LacedCounter(params)
    coords = range(1, n + 1)
    for size in range(0, min(3, n) + 1):
        for excl in _some_subsets(coords, size):
            direct = count_subsets_mod_p(laced_weight_multiset(params, excl)).counts
            assert tuple(counter.table(excl)) == direct


def _some_subsets(coords, size):
    rng = random.Random(len(coords) * 10 + size)
    coords = list(coords)
    for _ in range(12):
        yield set(rng.sample(coords, size))


@pytest.mark.parametrize("n", [32, 40, 64])
def test_full_weight_set_nearly_uniform(n):
    params = LacedParams.for_n(n)
    table = count_subsets_mod_p(laced_weight_multiset(params))
    mean = 2**n / params.p
    assert max(abs(c - mean) for c in table.counts) / mean <= 0.01
