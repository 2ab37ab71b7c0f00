"""Deletion strategies: reusable recipes for restoring min degree >= k.

build_strategy recurses on (H, collection): it repeatedly takes the lowest-id
low-degree vertex w, computes its shadow Y, and either terminates (Y covers
all of H, or H shrinks to one vertex) or peels Y off and recurses on the
rest.  The result is a layered object that can be replayed on any admissible
supergraph: each equality-case layer re-computes the shadow of its w in the
current graph and deletes it, which by construction stays inside the layer's
reservoir Y.

If some residual has no low-degree vertex at all, that residual is already a
subgraph of min degree >= k and is surfaced as WitnessFound instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AdmissibilityViolated, InternalInvariantBreach
from .graph import Graph
from .shadow import ShadowContext, _shadow_raw

SINGLETON_BASE = "SingletonBase"
A1_BASE = "A1Base"
A2_BASE = "A2Base"


@dataclass(frozen=True)
class StrategyLayer:
    case_tag: str  # "B1" | "B2"
    w: int
    Y: frozenset[int]
    # Case B.1 only: low-degree vertices of the residual that sit inside Y
    absorbed_low_degree: frozenset[int]
    # the member collection of the residual this layer's shadow was computed in
    collection: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class StrategyBase:
    kind: str  # SingletonBase | A1Base | A2Base
    w: int
    vertices: frozenset[int]  # vertex set of the residual at the base
    collection: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class WitnessFound:
    witness: Graph
    provenance: str


@dataclass(frozen=True)
class DeletionStrategy:
    context: ShadowContext
    layers: tuple[StrategyLayer, ...]
    base: StrategyBase
    S: frozenset[int]
    B: tuple[tuple[int, frozenset[int]], ...]  # (vertex, reservoir), sorted

    @property
    def base_kind(self) -> str:
        return self.base.kind

    def B_map(self) -> dict[int, frozenset[int]]:
        return dict(self.B)

    def serialize(self) -> str:
        """Audit view: one line per layer, base rendered as the final layer."""
        lines = []
        for i, layer in enumerate(self.layers):
            lines.append(
                f"layer {i}: case={layer.case_tag} w={layer.w} |Y|={len(layer.Y)}"
                f" absorbed={len(layer.absorbed_low_degree)}"
            )
        tag = {SINGLETON_BASE: "Singleton", A1_BASE: "A1", A2_BASE: "A2"}[self.base.kind]
        lines.append(
            f"layer {len(self.layers)}: case={tag} w={self.base.w}"
            f" |Y|={len(self.base.vertices)}"
        )
        lines.append(f"S={sorted(self.S)}")
        lines.append(f"B={[(v, len(r)) for v, r in self.B]}")
        return "\n".join(lines)


def build_strategy(ctx: ShadowContext) -> DeletionStrategy | WitnessFound:
    """Construct the layered strategy for ctx, or surface a witness."""
    k = ctx.k
    layers: list[StrategyLayer] = []
    cur_h = ctx.H
    cur_c = ctx.collection
    base: StrategyBase
    while True:
        if cur_h.n == 1:
            w = cur_h.vertices[0]
            base = StrategyBase(SINGLETON_BASE, w, cur_h.vertex_set, cur_c)
            break
        low = cur_h.degree_at_most(k - 1)
        if not low:
            return WitnessFound(
                witness=cur_h,
                provenance=f"no low-degree vertex at depth {len(layers)} (v={cur_h.n})",
            )
        w = min(low)
        rec = _shadow_raw(cur_h, cur_c, k, w)
        if rec.Y == cur_h.vertex_set:
            kind = A1_BASE if rec.deficiency > 0 else A2_BASE
            base = StrategyBase(kind, w, cur_h.vertex_set, cur_c)
            break
        if rec.deficiency == 0:
            layers.append(StrategyLayer("B2", w, rec.Y, frozenset(), cur_c))
        else:
            absorbed = frozenset(v for v in rec.Y if cur_h.degree(v) <= k - 1)
            layers.append(StrategyLayer("B1", w, rec.Y, absorbed, cur_c))
        cur_c = tuple(D for D in cur_c if not (D & rec.Y))
        cur_h = cur_h.delete(rec.Y)
    # assemble S and the reservoirs bottom-up
    S: set[int] = set()
    B: dict[int, frozenset[int]] = {}
    if base.kind == SINGLETON_BASE:
        S.add(base.w)
    elif base.kind == A1_BASE:
        S.update(cur_h.degree_at_most(k - 1))
    else:
        B[base.w] = base.vertices
    for layer in reversed(layers):
        if layer.case_tag == "B1":
            S.update(layer.absorbed_low_degree)
        else:
            B[layer.w] = layer.Y
    return DeletionStrategy(
        context=ctx,
        layers=tuple(layers),
        base=base,
        S=frozenset(S),
        B=tuple(sorted(B.items())),
    )


def strategy_budget(strategy: DeletionStrategy) -> tuple[int, int]:
    """(sum over S of k - deg_H(s), the allowed bound 2((k-1)v(H) - e(H)))."""
    H = strategy.context.H
    k = strategy.context.k
    weight = sum(k - H.degree(s) for s in strategy.S)
    bound = 2 * ((k - 1) * H.n - H.m)
    return weight, bound


def _check_admissible(strategy: DeletionStrategy, Ht: Graph) -> None:
    H = strategy.context.H
    k = strategy.context.k
    hv = H.vertex_set
    if not hv <= Ht.vertex_set:
        raise AdmissibilityViolated(
            "proper induced supergraph", f"vertex {min(hv - Ht.vertex_set)} missing"
        )
    if hv == Ht.vertex_set:
        raise AdmissibilityViolated("proper induced supergraph", "no new vertices")
    for u in H.vertices:
        if frozenset(x for x in Ht.neighbours(u) if x in hv) != H.neighbour_set(u):
            raise AdmissibilityViolated(
                "proper induced supergraph", f"neighbourhood of {u} altered"
            )
    allowed = H.degree_at_most(k - 1) - strategy.S
    for v in Ht.degree_at_most(k - 1):
        if v not in allowed:
            raise AdmissibilityViolated(
                "low-degree containment", f"vertex {v} is low-degree in the supergraph"
            )
    member_vertices = set()
    for D in strategy.context.collection:
        member_vertices |= D
    for v in Ht.vertex_set - hv:
        if any(u in member_vertices for u in Ht.neighbours(v)):
            raise AdmissibilityViolated(
                "new vertices avoid collection", f"new vertex {v} touches a member"
            )


def apply_strategy(strategy: DeletionStrategy, Htilde: Graph) -> Graph:
    """Replay the strategy on an admissible supergraph; returns the result."""
    _check_admissible(strategy, Htilde)
    k = strategy.context.k
    cur = Htilde
    for layer in strategy.layers:
        if layer.case_tag == "B1":
            continue
        w = layer.w
        if w not in cur:
            raise InternalInvariantBreach(f"layer vertex {w} lost during replay")
        if cur.degree(w) <= k - 1:
            rec = _shadow_raw(cur, layer.collection, k, w)
            if not rec.Y <= layer.Y:
                raise InternalInvariantBreach(
                    f"replayed shadow of {w} escaped its reservoir"
                )
            cur = cur.delete(rec.Y)
    if strategy.base.kind == A2_BASE:
        w = strategy.base.w
        if w in cur and cur.degree(w) <= k - 1:
            rec = _shadow_raw(cur, strategy.base.collection, k, w)
            if not rec.Y <= strategy.base.vertices:
                raise InternalInvariantBreach(
                    f"replayed base shadow of {w} escaped its reservoir"
                )
            cur = cur.delete(rec.Y)
    if cur.n == 0:
        raise InternalInvariantBreach("replay deleted the whole graph")
    stray = cur.degree_at_most(k - 1)
    if stray:
        raise InternalInvariantBreach(
            f"replay left low-degree vertices, e.g. {min(stray)}"
        )
    return cur
