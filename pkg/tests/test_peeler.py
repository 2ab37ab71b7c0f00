import pytest
from hypothesis import given
from hypothesis import strategies as st

from degcore import DomainError, Graph, fact1_threshold, gen_random_edges, gen_wheel, peel_to_core

from conftest import complete_graph, path_graph


def test_threshold_values():
    assert fact1_threshold(3, 10) == 18
    assert fact1_threshold(4, 10) == 25
    assert fact1_threshold(2, 5) == 5


def test_threshold_domain():
    with pytest.raises(DomainError):
        fact1_threshold(3, 1)


def test_wheel_sits_at_threshold():
    for k, n in [(2, 5), (3, 7), (3, 12), (4, 8), (5, 9)]:
        W = gen_wheel(k, n)
        assert W.m == fact1_threshold(k, n)
        assert W.min_degree() >= k


def test_peel_already_core():
    r = peel_to_core(complete_graph(4), 3)
    assert r.core == complete_graph(4)
    assert r.removed_order == ()


def test_peel_to_empty():
    r = peel_to_core(path_graph(3), 2)
    assert r.core.n == 0
    assert len(r.removed_order) == 3


def test_peel_pendant():
    G = Graph.from_edges(range(4), [(0, 1), (1, 2), (2, 0), (0, 3)])
    r = peel_to_core(G, 2)
    assert r.core.vertex_set == frozenset({0, 1, 2})
    assert r.removed_order == ((3, 1),)


@st.composite
def sparse_graphs(draw):
    n = draw(st.integers(min_value=3, max_value=14))
    m = draw(st.integers(min_value=0, max_value=n * (n - 1) // 2))
    return gen_random_edges(n, m, draw(st.integers(min_value=0, max_value=10**6)))


@given(sparse_graphs(), st.integers(min_value=2, max_value=4))
def test_peel_postconditions(G, k):
    r = peel_to_core(G, k)
    if r.core.n:
        assert r.core.min_degree() >= k
    # replay: each removal had degree <= k-1 at its moment
    cur = G
    for v, d in r.removed_order:
        assert cur.degree(v) == d <= k - 1
        cur = cur.delete({v})
    assert cur == r.core


@given(sparse_graphs(), st.integers(min_value=2, max_value=4))
def test_peel_order_invariance(G, k):
    lo = peel_to_core(G, k, order="lowest")
    hi = peel_to_core(G, k, order="highest")
    assert lo.core == hi.core


@given(st.integers(min_value=4, max_value=24), st.integers(min_value=0, max_value=10**6))
def test_threshold_guarantees_core(n, seed):
    k = 3
    G = gen_random_edges(n, fact1_threshold(k, n), seed)
    assert peel_to_core(G, k).core.n > 0


@given(sparse_graphs())
def test_edge_budget_monotone(G):
    # e >= (k-1)v - t survives removal of a degree <= k-1 vertex
    k, t = 3, 1
    cur = G
    for v, d in peel_to_core(G, k).removed_order:
        before = cur.m - (k - 1) * cur.n
        cur = cur.delete({v})
        assert cur.m - (k - 1) * cur.n >= before
