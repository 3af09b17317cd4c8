import math
import random
from collections import Counter
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from lcspheres.complex import dual_graph
from lcspheres.errors import DimensionError, InvalidInput
from lcspheres.trees import (
    LEAF,
    dary_from_tree_of_simplices,
    enumerate_dary_trees,
    enumerate_trees_unlabeled,
    fuss_catalan,
    internal_count,
    leaf_count,
    preorder_word,
    random_dary_tree,
    sample_tree,
    tree_boundary_stats,
    tree_from_word,
    tree_of_simplices_from_dary,
    tree_stats_formula,
    unlabeled_bounds,
)


def _fuss_by_recursion(d, N, memo={}):
    # T(N) = sum over compositions of N-1 into d parts of the product of T(part)
    if N == 0:
        return 1
    key = (d, N)
    if key not in memo:
        ways = [1] + [0] * (N - 1)
        for _ in range(d):
            nxt = [0] * N
            for i, a in enumerate(ways):
                for j in range(N - i):
                    nxt[i + j] += a * _fuss_by_recursion(d, j)
            ways = nxt
        memo[key] = ways[N - 1]
    return memo[key]


def test_fuss_catalan_values():
    assert fuss_catalan(2, 3) == 5
    assert fuss_catalan(3, 2) == 3
    assert all(fuss_catalan(d, 0) == 1 for d in range(2, 7))
    assert fuss_catalan(2, 10) == 16796
    with pytest.raises(DimensionError):
        fuss_catalan(1, 3)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_fuss_catalan_matches_recursion(d):
    for N in range(12):
        assert fuss_catalan(d, N) == _fuss_by_recursion(d, N)


def test_fuss_catalan_is_exact_for_large_n():
    assert fuss_catalan(3, 200) == math.comb(600, 200) // 401


@pytest.mark.parametrize("d,N", [(d, N) for d in (2, 3) for N in range(7)])
def test_enumeration_counts(d, N):
    trees = list(enumerate_dary_trees(d, N))
    assert len(trees) == fuss_catalan(d, N)
    assert len(set(trees)) == len(trees)
    for t in trees:
        assert internal_count(t) == N
        assert leaf_count(t) == (d - 1) * N + 1


def test_enumeration_small_cases():
    assert len(list(enumerate_dary_trees(2, 2))) == 2
    assert list(enumerate_dary_trees(3, 1)) == [(LEAF, LEAF, LEAF)]


def test_word_round_trip():
    for t in enumerate_dary_trees(3, 4):
        assert tree_from_word(preorder_word(t), 3) == t


@pytest.mark.parametrize("d,N", [(d, N) for d in (2, 3) for N in range(1, 6)])
def test_bijection_round_trip(d, N):
    for t in enumerate_dary_trees(d, N):
        T = tree_of_simplices_from_dary(t, d)
        assert dary_from_tree_of_simplices(T) == t


def _direct_stats(C, d):
    ridges = Counter(frozenset(r) for f in C.facets for r in combinations(sorted(f), d))
    codim2 = {frozenset(c) for f in C.facets for c in combinations(sorted(f), d - 1)}
    return (sum(1 for n in ridges.values() if n == 1), sum(1 for n in ridges.values() if n == 2), len(codim2))


def _check_tree(T):
    d, N = T.d, T.N
    C = T.complex
    G = dual_graph(C)
    assert G.number_of_nodes() == N and nx.is_tree(G)
    b = (d - 1) * N + 2
    assert _direct_stats(C, d) == (b, N - 1, d * b // 2)
    assert tuple(tree_boundary_stats(T).__dict__.values()) == (b, N - 1, d * b // 2)
    # proper colouring by d+1 labels
    for s in T.simplices:
        assert sorted(T.labels[v] for v in s) == list(range(1, d + 2))


def test_stats_examples():
    assert tuple(tree_stats_formula(3, 2).__dict__.values()) == (6, 1, 9)
    assert tuple(tree_stats_formula(2, 8).__dict__.values()) == (10, 7, 10)
    assert tuple(tree_stats_formula(3, 1).__dict__.values()) == (4, 0, 6)
    T = tree_of_simplices_from_dary((LEAF, LEAF, LEAF), 3)
    assert T.N == 1 and len(T.complex.facets) == 1


@pytest.mark.parametrize("d", [2, 3, 4])
def test_stats_on_enumerated_trees(d):
    for N in range(1, 5 if d < 4 else 4):
        for t in enumerate_dary_trees(d, N):
            _check_tree(tree_of_simplices_from_dary(t, d))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(1, 8), st.integers(0, 10**6))
def test_stats_on_sampled_trees(d, N, seed):
    _check_tree(sample_tree(d, N, seed))


def test_two_triangle_trees():
    a, b = (tree_of_simplices_from_dary(t, 2) for t in enumerate_dary_trees(2, 2))
    shared = {frozenset(x.simplices[0]) & frozenset(x.simplices[1]) for x in (a, b)}
    assert shared == {frozenset({1, 3}), frozenset({2, 3})}


def test_n4_d3_boundary():
    for t in enumerate_dary_trees(3, 4):
        assert _direct_stats(tree_of_simplices_from_dary(t, 3).complex, 3)[0] == 10


def test_unlabeled_counts():
    assert len(enumerate_trees_unlabeled(3, 1)) == 1
    assert len(enumerate_trees_unlabeled(3, 2)) == 1
    assert len(enumerate_trees_unlabeled(3, 3)) == 1
    # triangulated polygons: 1, 1, 1, 3, 4, 12 up to symmetry of the polygon
    assert [len(enumerate_trees_unlabeled(2, n)) for n in range(1, 7)] == [1, 1, 1, 3, 4, 12]


@pytest.mark.parametrize("d,N", [(d, N) for d in (2, 3) for N in range(1, 7)])
def test_unlabeled_sandwich(d, N):
    lo, hi = unlabeled_bounds(d, N)
    n = len(enumerate_trees_unlabeled(d, N))
    assert lo <= n <= hi


def test_random_tree_uniform():
    shapes = list(enumerate_dary_trees(2, 3))
    counts = Counter(dary_from_tree_of_simplices(sample_tree(2, 3, seed)) for seed in range(1, 5001))
    assert set(counts) == set(shapes)
    p = 1 / len(shapes)
    sigma = math.sqrt(5000 * p * (1 - p))
    for t in shapes:
        assert abs(counts[t] - 5000 * p) <= 3 * sigma


def test_sampling_is_deterministic():
    assert sample_tree(3, 6, 99) == sample_tree(3, 6, 99)
    assert sample_tree(3, 1, 5).N == 1
    assert sample_tree(3, 1, 5).complex.facets == {frozenset({1, 2, 3, 4})}
    rng = random.Random(1)
    assert internal_count(random_dary_tree(4, 9, rng)) == 9
    with pytest.raises(InvalidInput):
        sample_tree(3, 0)
