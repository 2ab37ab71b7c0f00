import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degcore import (
    AdmissibilityViolated,
    DeletionStrategy,
    Graph,
    ShadowContext,
    WitnessFound,
    apply_strategy,
    build_strategy,
    shadow_deficiency,
    strategy_budget,
)

from conftest import core_free_context, extend_admissible


def test_singleton_base():
    ctx = ShadowContext(Graph.from_edges([0], []), (), 3)
    s = build_strategy(ctx)
    assert s.base_kind == "SingletonBase"
    assert s.S == frozenset({0})
    assert strategy_budget(s) == (3, 4)  # k <= 2(k-1)


def test_path_reaches_strict_base():
    ctx = ShadowContext(Graph.from_edges(range(3), [(0, 1), (1, 2)]), (), 2)
    s = build_strategy(ctx)
    assert s.base_kind == "A1Base"
    assert s.S == frozenset({0, 2})
    assert strategy_budget(s) == (2, 2)
    assert s.layers == ()


def test_pendant_on_triangle_surfaces_witness():
    ctx = ShadowContext(Graph.from_edges(range(4), [(0, 1), (1, 2), (2, 0), (0, 3)]), (), 2)
    out = build_strategy(ctx)
    assert isinstance(out, WitnessFound)
    assert out.witness.vertex_set == frozenset({0, 1, 2})
    assert out.witness.min_degree() >= 2
    assert "depth 1" in out.provenance


def test_zero_slack_base():
    # chain 0-1 into a tight triangle member: the shadow swallows everything
    # with zero slack at every step, so the base keeps S empty
    H = Graph.from_edges(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)])
    s = build_strategy(ShadowContext(H, (frozenset({2, 3, 4}),), 2))
    assert s.base_kind == "A2Base"
    assert s.S == frozenset()
    assert strategy_budget(s) == (0, 0)
    assert s.B_map() == {0: H.vertex_set}


def test_zero_slack_replay_deletes_reserved_block():
    H = Graph.from_edges(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)])
    s = build_strategy(ShadowContext(H, (frozenset({2, 3, 4}),), 2))
    Ht = Graph.from_edges(
        range(8), [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4), (5, 6), (5, 7), (6, 7), (1, 5)]
    )
    out = apply_strategy(s, Ht)
    assert out.vertex_set == frozenset(range(1, 8))
    assert out.min_degree() >= 2


def test_serialize_is_deterministic():
    ctx = core_free_context(5)
    a = build_strategy(ctx)
    b = build_strategy(ctx)
    assert isinstance(a, DeletionStrategy)
    assert a.serialize() == b.serialize()
    assert "S=" in a.serialize()


def test_rejects_non_supergraph():
    ctx = ShadowContext(Graph.from_edges(range(3), [(0, 1), (1, 2)]), (), 2)
    s = build_strategy(ctx)
    with pytest.raises(AdmissibilityViolated) as exc:
        apply_strategy(s, ctx.H)  # no new vertices
    assert exc.value.requirement == "proper induced supergraph"
    with pytest.raises(AdmissibilityViolated):
        apply_strategy(s, Graph.from_edges(range(2), [(0, 1)]))
    # altered internal adjacency
    with pytest.raises(AdmissibilityViolated, match="altered"):
        apply_strategy(s, Graph.from_edges(range(4), [(0, 1), (1, 2), (0, 2), (0, 3), (2, 3), (1, 3)]))


def test_rejects_leftover_low_vertex():
    ctx = core_free_context(5)
    s = build_strategy(ctx)
    assert s.S, "seed 5 should produce a non-empty S"
    skip = min(s.S)
    Ht = extend_admissible(ctx, s.S, seed=1, skip_lift=skip, sprinkle=False)
    with pytest.raises(AdmissibilityViolated) as exc:
        apply_strategy(s, Ht)
    assert exc.value.requirement == "low-degree containment"


def test_rejects_contact_with_members():
    for seed in range(40):
        ctx = core_free_context(seed)
        if not ctx.collection:
            continue
        s = build_strategy(ctx)
        Ht = extend_admissible(ctx, s.S, seed=seed, hit_member=True, sprinkle=False)
        with pytest.raises(AdmissibilityViolated) as exc:
            apply_strategy(s, Ht)
        assert exc.value.requirement == "new vertices avoid collection"
        return
    pytest.fail("no seed produced a collection")


def test_zero_slack_layers_have_unique_low():
    hits = 0
    for seed in range(120):
        ctx = core_free_context(seed)
        s = build_strategy(ctx)
        residual = ctx.H
        for layer in s.layers:
            if layer.case_tag == "B2":
                assert shadow_deficiency(residual, layer.Y, ctx.k) == 0
                lows = [v for v in layer.Y if residual.degree(v) <= ctx.k - 1]
                assert lows == [layer.w]
                hits += 1
            residual = residual.delete(layer.Y)
    assert hits  # the sweep must actually exercise the zero-slack case


budget_seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=100, deadline=None)
@given(budget_seeds)
def test_budget_inequality(seed):
    ctx = core_free_context(seed)
    s = build_strategy(ctx)
    spent, bound = strategy_budget(s)
    assert spent <= bound
    assert s.S <= ctx.H.degree_at_most(ctx.k - 1)
    assert ctx.H.degree_at_most(ctx.k - 2) <= s.S


@settings(max_examples=100, deadline=None)
@given(budget_seeds, budget_seeds)
def test_replay_conclusions(seed, ext_seed):
    ctx = core_free_context(seed)
    s = build_strategy(ctx)
    Ht = extend_admissible(ctx, s.S, seed=ext_seed)
    out = apply_strategy(s, Ht)

    k = ctx.k
    assert out.n > 0
    assert out.min_degree() >= k  # (a)
    defect = lambda g: (k - 1) * g.n - g.m
    assert defect(out) <= defect(Ht)  # (b)

    deleted = Ht.vertex_set - out.vertex_set
    reservoir = frozenset()
    bmap = s.B_map()
    for v in Ht.degree_at_most(k - 1):
        reservoir |= bmap.get(v, frozenset())
    assert deleted <= reservoir  # (c)

    new = Ht.vertex_set - ctx.H.vertex_set
    for v in deleted:
        assert not (Ht.neighbour_set(v) & new)  # (d)

    for D in ctx.collection:
        kept = D & out.vertex_set
        assert kept in (frozenset(), D)  # (e)
        if kept:
            for v in deleted:
                assert not (Ht.neighbour_set(v) & D)  # (f)
