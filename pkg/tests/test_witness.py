import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperzeros.hypergraph import Hypergraph, random_instance
from hyperzeros.witness import (
    ROOT,
    build_window,
    construct_2tree,
    degree_violations,
    enumerate_2trees,
    is_two_tree,
    log_tree_count_bound,
    log_tree_count_bound_small_root,
    pred,
    scan_vertex,
    ts,
)

from conftest import hypergraphs


def path(n):
    return {i: {j for j in (i - 1, i + 1) if 0 <= j < n} for i in range(n)}


def test_pred_examples():
    assert pred(0, 0, 3) == 0
    assert pred(2, 0, 3) == -1
    assert pred(1, 0, 3) == -2


@given(st.integers(1, 9), st.integers(-60, 60), st.data())
def test_pred_is_latest_update(n, t, data):
    u = data.draw(st.integers(0, n - 1))
    s = pred(u, t, n)
    assert s <= t < s + n and scan_vertex(s, n) == u


def test_ts_examples():
    assert set(ts([0, 1, 2], 0, 3)) == {0, -1, -2}
    assert len(ts([4], 7, 5)) == 1
    with pytest.raises(ValueError):
        ts([], 0, 3)


@given(st.integers(1, 8), st.integers(-30, 30), st.data())
def test_ts_injective(n, t, data):
    U = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    assert len(set(ts(U, t, n))) == len(U)


def test_window_edgeless():
    W = build_window(Hypergraph(3), [1], 9)
    assert len(W) == 1 and W.vertices[W.root].origin == ROOT


def test_window_single_triple():
    W = build_window(Hypergraph(3, ((0, 1, 2),)), [0, 1, 2], 6)
    assert [v.times for v in W.vertices] == [(-5, -4, -3), (-4, -3, -2), (-3, -2, -1), (-2, -1, 0)]
    assert W.root == 3
    assert W.adj[W.root] == {1, 2}
    assert W.adj[0] == {1, 2}


def test_window_horizon_guard():
    with pytest.raises(ValueError):
        build_window(Hypergraph(4, ((0, 1),)), [0], 3)


@given(hypergraphs(n_max=7, k_min=2), st.integers(1, 4), st.data())
def test_window_degree_bounds(H, mult, data):
    S = data.draw(st.sets(st.integers(0, H.n - 1), min_size=1, max_size=3))
    if H.m == 0:
        return
    W = build_window(H, S, mult * H.n)
    assert degree_violations(H, W) == []
    assert all(min(v.times) > -W.T for v in W.vertices)


def test_2tree_examples():
    star = {0: {1, 2, 3}, 1: {0}, 2: {0}, 3: {0}}
    assert construct_2tree(star, [0], 0) == {0}
    assert construct_2tree(path(5), range(5), 0) == {0, 2, 4}
    assert construct_2tree(star, range(4), 0) == {0}


@st.composite
def graphs(draw, n_max=10):
    n = draw(st.integers(1, n_max))
    adj = {i: set() for i in range(n)}
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))  # spanning tree keeps it connected
        adj[i].add(j)
        adj[j].add(i)
    for _ in range(draw(st.integers(0, n))):
        a, b = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


@given(graphs())
def test_2tree_properties(adj):
    tree = construct_2tree(adj, adj, 0)
    D = max(len(v) for v in adj.values())
    assert 0 in tree and is_two_tree(adj, tree)
    assert len(tree) >= len(adj) // (D + 1)


@given(graphs(n_max=8), st.integers(1, 4))
def test_enumerated_trees_are_2trees(adj, s_max):
    trees = enumerate_2trees(adj, 0, s_max)
    assert len(set(trees)) == len(trees)
    for t in trees:
        assert 0 in t and len(t) <= s_max and is_two_tree(adj, t)


def test_enumerate_trivial():
    assert enumerate_2trees(path(4), 0, 1) == [frozenset({0})]
    assert set(enumerate_2trees(path(5), 0, 3)) == {frozenset({0}), frozenset({0, 2}), frozenset({0, 2, 4})}


def test_tree_counts_within_bound():
    for seed in range(6):
        H = random_instance(6, 3, 2, 2, seed)
        W = build_window(H, H.edges[0][:1], 2 * H.n)
        trees = enumerate_2trees(W.adjacency(), W.root, 4)
        for i in range(1, 5):
            count = sum(1 for t in trees if len(t) == i)
            if count:
                assert math.log(count) <= log_tree_count_bound_small_root(i, H.delta, H.k_max)
                assert math.log(count) <= log_tree_count_bound(i, H.delta, H.k_max, 1)
