"""Shadows: the minimal closed deletion set around a low-degree vertex.

Given a graph H, a collection of protected member sets, and a vertex w of
degree below k, the shadow of w is the minimal vertex set Y such that

  (I)   w is in Y;
  (II)  no member is split by Y;
  (III) every outside neighbour of Y keeps degree >= k in H - Y;
  (IV)  members adjacent to Y are wholly absorbed into Y.

The growing procedure tracks the deficiency (k-1)|Y| - e_incident(Y) after
every step; the deletion-strategy module leans on its monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionViolated, UnknownVertex
from .graph import Graph


@dataclass(frozen=True)
class ShadowContext:
    H: Graph
    collection: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self) -> None:
        H, k = self.H, self.k
        seen: set[int] = set()
        for idx, D in enumerate(self.collection):
            if not D:
                raise PreconditionViolated(f"member {idx} is empty")
            if not D <= H.vertex_set:
                raise PreconditionViolated(f"member {idx} not inside the graph")
            if seen & D:
                raise PreconditionViolated(f"member {idx} overlaps an earlier member")
            seen |= D
            for v in D:
                if H.degree(v) < k:
                    raise PreconditionViolated(
                        f"member {idx} vertex {v} has degree {H.degree(v)} < k"
                    )
            if H.boundary_edge_count(D) > (k - 1) * len(D) + 1:
                raise PreconditionViolated(f"member {idx} exceeds its boundary bound")


@dataclass(frozen=True)
class ShadowStep:
    kind: str  # "vertex" | "set"
    value: int  # vertex id, or collection index


@dataclass(frozen=True)
class ShadowRecord:
    w: int
    Y: frozenset[int]
    trace: tuple[ShadowStep, ...]
    # entry 0 is for the initial {w}, then one entry per step
    deficiency_history: tuple[int, ...]

    @property
    def deficiency(self) -> int:
        return self.deficiency_history[-1]


@dataclass(frozen=True)
class ClosureReport:
    ok: bool
    failed: str | None  # "I" | "II" | "III" | "IV"
    witness: str


def shadow_deficiency(H: Graph, Y, k: int) -> int:
    """(k-1)|Y| minus the number of edges incident to Y."""
    Ys = frozenset(Y)
    return (k - 1) * len(Ys) - H.boundary_edge_count(Ys)


def low_degree_weight(H: Graph, Y, k: int) -> int:
    """Sum of (k - deg) over the low-degree vertices inside Y."""
    total = 0
    for v in Y:
        d = H.degree(v)
        if d <= k - 1:
            total += k - d
    return total


def _shadow_raw(
    H: Graph,
    collection: tuple[frozenset[int], ...],
    k: int,
    w: int,
    step_order: str = "canonical",
) -> ShadowRecord:
    """Closure engine without context revalidation (replay uses it directly)."""
    member_of: dict[int, int] = {}
    for idx, D in enumerate(collection):
        for v in D:
            if v in H:
                member_of[v] = idx
    Y: set[int] = set()
    in_y: dict[int, int] = {}  # neighbours inside Y, for every touched vertex
    member_touch = [0] * len(collection)  # edges from Y into each member
    absorbed = [False] * len(collection)
    incident = 0
    frontier: set[int] = set()  # outside non-member vertices adjacent to Y

    def add_vertex(v: int) -> None:
        nonlocal incident
        incident += H.degree(v) - in_y.get(v, 0)
        Y.add(v)
        frontier.discard(v)
        for u in H.neighbours(v):
            in_y[u] = in_y.get(u, 0) + 1
            if u in Y:
                continue
            idx = member_of.get(u)
            if idx is None:
                frontier.add(u)
            else:
                member_touch[idx] += 1

    def rule1_candidates() -> list[int]:
        return [v for v in frontier if H.degree(v) - in_y.get(v, 0) <= k - 1]

    def rule2_candidates() -> list[int]:
        return [
            idx
            for idx in range(len(collection))
            if not absorbed[idx] and member_touch[idx] > 0
        ]

    reverse = step_order == "reverse"
    if step_order not in ("canonical", "reverse"):
        raise PreconditionViolated(f"unknown step order {step_order!r}")

    add_vertex(w)
    history = [(k - 1) * len(Y) - incident]
    trace: list[ShadowStep] = []
    while True:
        step: ShadowStep | None = None
        if reverse:
            sets = rule2_candidates()
            if sets:
                idx = sets[-1]
                absorbed[idx] = True
                for v in sorted(collection[idx]):
                    add_vertex(v)
                step = ShadowStep("set", idx)
            else:
                verts = rule1_candidates()
                if verts:
                    v = max(verts)
                    add_vertex(v)
                    step = ShadowStep("vertex", v)
        else:
            verts = rule1_candidates()
            if verts:
                v = min(verts)
                add_vertex(v)
                step = ShadowStep("vertex", v)
            else:
                sets = rule2_candidates()
                if sets:
                    idx = sets[0]
                    absorbed[idx] = True
                    for v in sorted(collection[idx]):
                        add_vertex(v)
                    step = ShadowStep("set", idx)
        if step is None:
            break
        trace.append(step)
        history.append((k - 1) * len(Y) - incident)
    return ShadowRecord(
        w=w, Y=frozenset(Y), trace=tuple(trace), deficiency_history=tuple(history)
    )


def shadow(ctx: ShadowContext, w: int, step_order: str = "canonical") -> ShadowRecord:
    """Shadow of w in ctx.H with respect to ctx.collection."""
    if w not in ctx.H:
        raise UnknownVertex(f"vertex {w} not in graph")
    if ctx.H.degree(w) > ctx.k - 1:
        raise PreconditionViolated(
            f"vertex {w} has degree {ctx.H.degree(w)}, not below k={ctx.k}"
        )
    return _shadow_raw(ctx.H, ctx.collection, ctx.k, w, step_order)


def verify_shadow_closure(ctx: ShadowContext, Y, w: int) -> ClosureReport:
    """Check closure properties (I)-(IV) literally; report the first failure."""
    H, k = ctx.H, ctx.k
    Ys = frozenset(Y)
    if w not in Ys:
        return ClosureReport(False, "I", f"vertex {w} missing from Y")
    for idx, D in enumerate(ctx.collection):
        inter = D & Ys
        if inter and inter != D:
            return ClosureReport(False, "II", f"member {idx} split by Y")
    for v in H.vertices:
        if v in Ys:
            continue
        touch = sum(1 for u in H.neighbours(v) if u in Ys)
        if touch > 0 and H.degree(v) - touch < k:
            return ClosureReport(
                False, "III", f"vertex {v} drops to degree {H.degree(v) - touch}"
            )
    for idx, D in enumerate(ctx.collection):
        if D <= Ys:
            continue
        adjacent = any(u in Ys for v in D for u in H.neighbours(v))
        if adjacent:
            return ClosureReport(False, "IV", f"member {idx} adjacent to Y but outside")
    return ClosureReport(True, None, "")
