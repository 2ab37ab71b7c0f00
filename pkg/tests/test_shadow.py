import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degcore import (
    Graph,
    PreconditionViolated,
    ShadowContext,
    UnknownVertex,
    low_degree_weight,
    shadow,
    shadow_deficiency,
    verify_shadow_closure,
)

from conftest import extend_keeping_vertex, shadow_case


def path_ctx():
    return ShadowContext(Graph.from_edges(range(3), [(0, 1), (1, 2)]), (), 2)


def pendant_ctx():
    H = Graph.from_edges(range(4), [(0, 1), (1, 2), (2, 0), (0, 3)])
    return ShadowContext(H, (), 2)


def test_path_shadow_swallows_everything():
    rec = shadow(path_ctx(), 0)
    assert rec.Y == frozenset({0, 1, 2})
    assert rec.deficiency_history == (0, 0, 1)
    assert [s.kind for s in rec.trace] == ["vertex", "vertex"]


def test_pendant_shadow_stays_put():
    rec = shadow(pendant_ctx(), 3)
    assert rec.Y == frozenset({3})
    assert rec.deficiency_history == (0,)
    assert rec.trace == ()


def test_member_absorbed_through_adjacency():
    H = Graph.from_edges(range(6), [(0, 1), (1, 2), (1, 3), (4, 5), (2, 4), (3, 4), (2, 5), (3, 5)])
    ctx = ShadowContext(H, (frozenset({4, 5}),), 3)
    rec = shadow(ctx, 0)
    assert rec.Y == H.vertex_set
    assert [s.kind for s in rec.trace] == ["vertex", "vertex", "vertex", "set"]
    assert rec.trace[-1].value == 0  # collection index


def test_shadow_rejects_high_degree_seed():
    H = Graph.from_edges(range(6), [(0, 1), (1, 2), (1, 3), (4, 5), (2, 4), (3, 4), (2, 5), (3, 5)])
    ctx = ShadowContext(H, (frozenset({4, 5}),), 3)
    with pytest.raises(PreconditionViolated):
        shadow(ctx, 4)


def test_context_validates_members():
    H = Graph.from_edges(range(3), [(0, 1), (1, 2)])
    with pytest.raises(PreconditionViolated):
        ShadowContext(H, (frozenset({0}),), 2)  # degree 1 < k


def test_deficiency_values():
    ctx = pendant_ctx()
    assert shadow_deficiency(ctx.H, frozenset({3}), 2) == 0
    with pytest.raises(UnknownVertex):
        shadow_deficiency(ctx.H, frozenset({9}), 2)


def test_weight_examples():
    assert low_degree_weight(path_ctx().H, frozenset({0, 1, 2}), 2) == 2
    assert low_degree_weight(pendant_ctx().H, frozenset({3}), 2) == 1
    assert low_degree_weight(pendant_ctx().H, frozenset({0, 1}), 2) == 0


def test_closure_report_catches_omission():
    rep = verify_shadow_closure(path_ctx(), frozenset({0, 1}), 0)
    assert rep.ok is False
    assert rep.failed == "III"
    assert "vertex 2" in rep.witness


def test_full_vertex_set_always_closes():
    for ctx in (path_ctx(), pendant_ctx()):
        assert verify_shadow_closure(ctx, ctx.H.vertex_set, min(ctx.H.vertices)).ok


seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=120, deadline=None)
@given(seeds)
def test_shadow_properties(seed):
    ctx, w = shadow_case(seed)
    rec = shadow(ctx, w)
    H, k, Y = ctx.H, ctx.k, rec.Y
    hist = rec.deficiency_history
    assert hist[0] >= 0
    assert all(a <= b for a, b in zip(hist, hist[1:]))
    assert hist[-1] == shadow_deficiency(H, Y, k)
    defic = hist[-1]
    assert defic >= 0  # boundary never exceeds (k-1)|Y|
    assert verify_shadow_closure(ctx, Y, w).ok
    weight = low_degree_weight(H, Y, k)
    assert weight <= defic + 1
    if defic == 0:
        assert set(hist) == {0}
        lows = [v for v in Y if H.degree(v) <= k - 1]
        assert lows == [w]
        assert H.degree(w) == k - 1
    else:
        assert weight <= 2 * defic


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_shadow_order_invariance(seed):
    ctx, w = shadow_case(seed)
    assert shadow(ctx, w).Y == shadow(ctx, w, step_order="reverse").Y


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_leftover_lows_lose_only_w(seed):
    ctx, w = shadow_case(seed)
    rec = shadow(ctx, w)
    if rec.Y == ctx.H.vertex_set:
        return
    rest = ctx.H.delete(rec.Y)
    inner = {v for v in rest.vertices if rest.degree(v) <= ctx.k - 1}
    outer = {v for v in ctx.H.vertices if ctx.H.degree(v) <= ctx.k - 1}
    assert inner <= outer - {w}


@settings(max_examples=150, deadline=None)
@given(seeds, seeds)
def test_equality_case_survives_extension(seed, ext_seed):
    ctx, w = shadow_case(seed)
    rec = shadow(ctx, w)
    if shadow_deficiency(ctx.H, rec.Y, ctx.k) != 0:
        return
    grown = extend_keeping_vertex(ctx, w, ext_seed)
    big = ShadowContext(grown, ctx.collection, ctx.k)
    rec2 = shadow(big, w)
    assert rec2.Y <= rec.Y
    added = set(grown.vertices) - set(ctx.H.vertices)
    for v in added:
        assert not (grown.neighbour_set(v) & rec2.Y)
