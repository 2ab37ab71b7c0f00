"""Staged partial colourings over a 401k-colour palette.

A state at stage ell assigns colours to some vertices so that seven
conditions hold; the key ones are that every collection member is
monochromatic or untouched, that removing any single colour class keeps
minimum degree >= k, and that late buckets are mostly coloured.  Each
assemble_step advances ell by one, either by pure relabelling (when few
members of the next bucket are still uncoloured) or by running the full
machinery: carve out the residual graph H, build one deletion strategy on
it, greedily list-colour the uncoloured bucket members, and replay the
strategy once per colour to decide which extra vertices each colour class
must swallow.

verify_appropriate is an independent re-implementation of the seven
conditions (it looks only at the graph, the buckets and the classes) and is
used as the oracle for every state this module produces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from functools import cached_property
from typing import TYPE_CHECKING, Callable, Iterable

from .errors import (
    AdmissibilityViolated,
    DomainError,
    InternalInvariantBreach,
    PaletteExhausted,
    PreconditionViolated,
)
from .goodsets import format_set
from .graph import Graph
from .shadow import ShadowContext
from .strategy import DeletionStrategy, WitnessFound, apply_strategy, build_strategy

if TYPE_CHECKING:
    from .extractor import DyadicBuckets


def palette_size(k: int) -> int:
    if k < 1:
        raise DomainError(f"k={k} out of range")
    return 401 * k


@dataclass(frozen=True)
class ColouringState:
    """Immutable stage-ell colouring; classes[i] is the class of colour i+1."""

    ell: int
    classes: tuple[frozenset[int], ...]
    buckets: DyadicBuckets
    k: int

    @property
    def palette(self) -> int:
        return len(self.classes)

    @cached_property
    def assignment(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, cls in enumerate(self.classes, start=1):
            for v in cls:
                out[v] = i
        return out

    @cached_property
    def coloured(self) -> frozenset[int]:
        return frozenset(self.assignment)

    def is_uncoloured(self, D: frozenset[int]) -> bool:
        return D.isdisjoint(self.coloured)

    def member_colour(self, D: frozenset[int]) -> int | None:
        """Colour of a monochromatic member, None if fully uncoloured."""
        seen = {self.assignment.get(v) for v in D}
        if seen == {None}:
            return None
        if len(seen) == 1:
            return next(iter(seen))
        raise InternalInvariantBreach(f"member {format_set(D)} is split")

    @cached_property
    def y(self) -> tuple[int, ...]:
        """Per colour: monochromatic members among buckets 1..ell."""
        counts = [0] * self.palette
        for j in range(1, self.ell + 1):
            for D in self.buckets.classes[j - 1]:
                seen = {self.assignment.get(v) for v in D}
                if len(seen) == 1 and None not in seen:
                    counts[next(iter(seen)) - 1] += 1
        return tuple(counts)


@dataclass(frozen=True)
class ColouringReport:
    ok: bool
    condition: str | None = None
    witness: str | None = None


@dataclass(frozen=True)
class StepScratch:
    """Intermediate artifacts of one full-path assemble_step, for audits."""

    C_prime: tuple[frozenset[int], ...]
    H: Graph
    C_H: tuple[frozenset[int], ...]
    S_prime: tuple[int, ...]
    neighbour_sets: dict[int, tuple[frozenset[int], ...]]
    lists: dict[int, tuple[int, ...]]
    popular: frozenset[frozenset[int]]
    psi: dict[frozenset[int], int]
    Z: dict[int, tuple[frozenset[int], ...]]
    X_prime: tuple[frozenset[int], ...]


def init_state(buckets: DyadicBuckets, k: int) -> ColouringState:
    """All-uncoloured state at the starting stage."""
    return ColouringState(
        ell=buckets.jprime,
        classes=tuple(frozenset() for _ in range(palette_size(k))),
        buckets=buckets,
        k=k,
    )


def verify_appropriate(
    G: Graph, state: ColouringState, ell: int | None = None
) -> ColouringReport:
    """Check the seven stage-ell conditions literally; first failure wins.

    Reads only G, the buckets and the classes, so it is usable as an oracle
    for states produced elsewhere.
    """
    if ell is None:
        ell = state.ell
    k = state.k
    buckets = state.buckets
    J = buckets.J
    classes = state.classes
    # (i) each vertex has at most one colour
    seen: dict[int, int] = {}
    for i, cls in enumerate(classes, start=1):
        for v in cls:
            if v in seen:
                return ColouringReport(
                    False, "i", f"vertex {v} in colours {seen[v]} and {i}"
                )
            seen[v] = i
    assignment = seen
    coloured = set(assignment)
    # (ii) members monochromatic or fully uncoloured
    for j in range(1, J + 1):
        for D in buckets.classes[j - 1]:
            cols = {assignment.get(v) for v in D}
            if len(cols) > 1:
                return ColouringReport(False, "ii", f"member {format_set(D)} is split")
    # (iii) edge load of each class against its member credit
    y = [0] * len(classes)
    for j in range(1, min(ell, J) + 1):
        for D in buckets.classes[j - 1]:
            cols = {assignment.get(v) for v in D}
            if len(cols) == 1 and None not in cols:
                y[next(iter(cols)) - 1] += 1
    for i, cls in enumerate(classes, start=1):
        if not cls:
            continue
        load = G.boundary_edge_count(cls)
        if load > (k - 1) * len(cls) + y[i - 1]:
            return ColouringReport(
                False,
                "iii",
                f"colour {i}: {load} edges > {(k - 1) * len(cls)}+{y[i - 1]}",
            )
    # (iv) removing any one colour class keeps min degree >= k
    lows = G.degree_at_most(k - 1)
    for i, cls in enumerate(classes, start=1):
        out = lows - cls
        if out:
            v = min(out)
            return ColouringReport(
                False, "iv", f"colour {i}: vertex {v} has degree {G.degree(v)}"
            )
        for v in sorted({u for x in cls for u in G.neighbours(x)} - cls):
            d = G.degree(v) - sum(1 for u in G.neighbours(v) if u in cls)
            if d <= k - 1:
                return ColouringReport(
                    False, "iv", f"colour {i}: vertex {v} drops to degree {d}"
                )
    # (v) members of the first jprime buckets untouched
    for j in range(1, buckets.jprime + 1):
        for D in buckets.classes[j - 1]:
            hit = D & coloured
            if hit:
                return ColouringReport(
                    False, "v", f"member {format_set(D)} of bucket {j} coloured"
                )
    # (vi) buckets up to ell are at least three-quarters coloured
    for j in range(buckets.jprime + 1, min(ell, J) + 1):
        cj = buckets.classes[j - 1]
        unc = sum(1 for D in cj if not D & coloured)
        if 4 * unc > len(cj):
            return ColouringReport(
                False, "vi", f"bucket {j}: {unc} of {len(cj)} members uncoloured"
            )
    # (vii) uncoloured members of later buckets have uncoloured neighbourhoods
    for j in range(ell + 1, J + 1):
        for D in buckets.classes[j - 1]:
            if D & coloured:
                continue
            for v in sorted({u for x in D for u in G.neighbours(x)} - D):
                if v in coloured:
                    return ColouringReport(
                        False,
                        "vii",
                        f"member {format_set(D)} uncoloured, neighbour {v} coloured",
                    )
    return ColouringReport(True)


def greedy_list_colour(
    C_prime: Iterable[frozenset[int]],
    memberships: dict[frozenset[int], tuple[int, ...]],
    lists: dict[int, tuple[int, ...]],
    palette: int,
    popular: frozenset[frozenset[int]],
) -> dict[frozenset[int], int]:
    """Greedy member colouring: sequence order, smallest feasible colour.

    Within every group C(s) the chosen colours are pairwise distinct and
    avoid the forbidden list L(s); popular members stay uncoloured.
    """
    order = list(C_prime)
    # invert memberships once: which members each s constrains
    groups: dict[int, list[frozenset[int]]] = {}
    for D in order:
        for s in memberships.get(D, ()):
            groups.setdefault(s, []).append(D)
    taken: dict[int, set[int]] = {s: set() for s in groups}
    psi: dict[frozenset[int], int] = {}
    for D in order:
        if D in popular:
            continue
        banned: set[int] = set()
        for s in memberships.get(D, ()):
            banned.update(lists.get(s, ()))
            banned.update(taken[s])
        colour = next((c for c in range(1, palette + 1) if c not in banned), None)
        if colour is None:
            raise PaletteExhausted(
                f"member {format_set(D)}: {len(banned)} colours banned"
            )
        psi[D] = colour
        for s in memberships.get(D, ()):
            taken[s].add(colour)
    return psi


def _build_h(
    G: Graph, state: ColouringState, upto: int
) -> tuple[Graph, tuple[frozenset[int], ...]]:
    """Residual graph: drop buckets 1..upto and every coloured vertex."""
    buckets = state.buckets
    gone: set[int] = set(state.coloured)
    for j in range(1, upto + 1):
        for D in buckets.classes[j - 1]:
            gone |= D
    if len(gone) >= G.n:
        raise InternalInvariantBreach("residual graph is empty")
    H = G.delete(gone)
    c_h = tuple(
        D
        for j in range(upto + 1, buckets.J + 1)
        for D in buckets.classes[j - 1]
        if D <= H.vertex_set
    )
    return H, c_h


def assemble_step(
    state: ColouringState,
    G: Graph,
    strategy_provider: Callable[
        [ShadowContext], DeletionStrategy | WitnessFound
    ] = build_strategy,
    audit: list[str] | None = None,
    scratch_out: list[StepScratch] | None = None,
) -> ColouringState | WitnessFound:
    """Advance the state one stage, or surface a min-degree-k witness.

    scratch_out, if given, receives a StepScratch when the full path runs
    (the relabel shortcut produces no artifacts worth keeping).
    """
    ell = state.ell
    buckets = state.buckets
    k = state.k
    if ell >= buckets.J:
        raise PreconditionViolated(f"stage {ell} is already final")
    c_next = buckets.classes[ell]  # bucket ell+1
    C_prime = tuple(D for D in c_next if state.is_uncoloured(D))
    if 4 * len(C_prime) <= len(c_next):
        out = replace(state, ell=ell + 1)
        rep = verify_appropriate(G, out, ell + 1)
        if not rep.ok:
            raise InternalInvariantBreach(
                f"relabel broke condition ({rep.condition}): {rep.witness}"
            )
        if audit is not None:
            audit.append(
                f"ColouringStep ell={ell} members={len(c_next)}"
                f" uncoloured={len(C_prime)} branch=relabel"
            )
        return out
    H, c_h = _build_h(G, state, ell + 1)
    defect = (k - 1) * H.n - H.m
    if defect > 12 * len(C_prime):
        raise InternalInvariantBreach(
            f"residual edge defect {defect} exceeds {12 * len(C_prime)}"
        )
    try:
        ctx = ShadowContext(H=H, collection=c_h, k=k)
        strat = strategy_provider(ctx)
    except PreconditionViolated as exc:
        raise InternalInvariantBreach(f"residual context invalid: {exc}") from exc
    if isinstance(strat, WitnessFound):
        if audit is not None:
            audit.append(
                f"ColouringStep ell={ell} members={len(c_next)}"
                f" uncoloured={len(C_prime)} branch=witness"
            )
        return strat
    S = strat.S
    budget = sum(k + 1 - H.degree(s) for s in S)
    if budget > 48 * len(C_prime):
        raise InternalInvariantBreach(
            f"top-up budget {budget} exceeds {48 * len(C_prime)}"
        )
    # which low vertices touch the uncoloured bucket, and through which members
    member_vertices: dict[int, frozenset[int]] = {}
    for D in C_prime:
        for v in D:
            member_vertices[v] = D
    neighbour_sets: dict[int, tuple[frozenset[int], ...]] = {}
    for s in sorted(S):
        adj: list[frozenset[int]] = []
        hit = {member_vertices[u] for u in G.neighbours(s) if u in member_vertices}
        for D in C_prime:
            if D in hit:
                adj.append(D)
        if adj:
            cap = k + 1 - H.degree(s)
            neighbour_sets[s] = tuple(adj[:cap])
    S_prime = tuple(sorted(neighbour_sets))
    lists: dict[int, tuple[int, ...]] = {}
    for s in S_prime:
        cols = sorted({state.assignment[u] for u in G.neighbours(s) if u in state.assignment})
        lists[s] = tuple(cols[:k])
    memberships: dict[frozenset[int], tuple[int, ...]] = {D: () for D in C_prime}
    for s in S_prime:
        for D in neighbour_sets[s]:
            memberships[D] = memberships[D] + (s,)
    popular = frozenset(D for D in C_prime if len(memberships[D]) > 200)
    if 4 * len(popular) > len(C_prime):
        raise InternalInvariantBreach(
            f"{len(popular)} popular members out of {len(C_prime)}"
        )
    psi = greedy_list_colour(C_prime, memberships, lists, state.palette, popular)
    Z: dict[int, tuple[frozenset[int], ...]] = {}
    for D, colour in psi.items():
        Z[colour] = Z.get(colour, ()) + (D,)
    # one strategy, one replay per colour that actually differs from G
    X_prime: list[frozenset[int]] = []
    shared: frozenset[int] | None = None
    for i in range(1, state.palette + 1):
        Xi = state.classes[i - 1]
        Zi = Z.get(i, ())
        try:
            if not Xi and not Zi:
                if shared is None:
                    shared = G.vertex_set - apply_strategy(strat, G).vertex_set
                X_prime.append(shared)
                continue
            drop = set(Xi)
            for D in Zi:
                drop |= D
            Ht = G.delete(drop)
            X_prime.append(Ht.vertex_set - apply_strategy(strat, Ht).vertex_set)
        except AdmissibilityViolated as exc:
            raise InternalInvariantBreach(
                f"colour {i}: replay graph inadmissible ({exc.requirement}: {exc.detail})"
            ) from exc
    used: set[int] = set()
    for i, xp in enumerate(X_prime, start=1):
        if xp & used:
            raise InternalInvariantBreach(
                f"colour {i}: extension overlaps an earlier colour"
            )
        used |= xp
    new_classes = []
    for i in range(1, state.palette + 1):
        cls = set(state.classes[i - 1]) | X_prime[i - 1]
        for D in Z.get(i, ()):
            cls |= D
        new_classes.append(frozenset(cls))
    out = ColouringState(ell=ell + 1, classes=tuple(new_classes), buckets=buckets, k=k)
    rep = verify_appropriate(G, out, ell + 1)
    if not rep.ok:
        raise InternalInvariantBreach(
            f"step output broke condition ({rep.condition}): {rep.witness}"
        )
    if scratch_out is not None:
        scratch_out.append(
            StepScratch(
                C_prime=C_prime,
                H=H,
                C_H=c_h,
                S_prime=S_prime,
                neighbour_sets=neighbour_sets,
                lists=lists,
                popular=popular,
                psi=psi,
                Z=Z,
                X_prime=tuple(X_prime),
            )
        )
    if audit is not None:
        hist = Counter(len(xp) for xp in X_prime)
        audit.append(
            f"ColouringStep ell={ell} members={len(c_next)}"
            f" uncoloured={len(C_prime)} branch=full"
            f" coloured_now={len(psi)}"
            f" xprime={{{','.join(f'{s}:{c}' for s, c in sorted(hist.items()))}}}"
        )
    return out
