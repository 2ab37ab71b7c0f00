"""Fixpoint closure building the family of maximal good sets.

A good set starts as a single vertex of degree exactly k and grows by three
closure rules: absorb an outside vertex whose degree drops below k once the
set is removed, merge two overlapping good sets, merge two adjacent good
sets.  The closure either reaches the canonical maximal family or exits
through one of two escape hatches that the caller turns into progress:

* SparseCut: an overlap X of two good sets with boundary at most (k-1)|X|
  (the caller deletes X and recurses);
* OversizeGoodSet: a set grew past n/k (the caller removes a traced
  intermediate of size between n/(2k) and n/k and peels).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError, InternalInvariantBreach, PreconditionViolated, UnknownVertex
from .graph import Graph
from .peeler import peel_to_core


def format_set(s) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


@dataclass(frozen=True)
class GoodFamily:
    # sorted by size descending, ties by smallest contained vertex id
    members: tuple[frozenset[int], ...]
    traces: tuple[tuple[str, ...], ...]

    @property
    def m(self) -> int:
        return len(self.members)

    @property
    def total_size(self) -> int:
        return sum(len(d) for d in self.members)


@dataclass(frozen=True)
class GoodSetEscape:
    kind: str  # "SparseCut" | "OversizeGoodSet"
    witness_set: frozenset[int]
    detail: str
    witness_trace: tuple[str, ...]


@dataclass(frozen=True)
class GoodSetReport:
    size: int
    boundary: int
    bound: int
    passed: bool
    cap_ok: bool | None  # k*|D| <= n, only when requested


class EmptyCore:
    """Signal: removal plus peeling left nothing."""

    def __repr__(self) -> str:
        return "EmptyCore()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EmptyCore)

    def __hash__(self) -> int:
        return hash(EmptyCore)


class _Closure:
    """Mutable worklist state for one grow_good_sets run."""

    def __init__(self, G: Graph, k: int):
        self.G = G
        self.k = k
        self.n = G.n
        self.sets: list[set[int] | None] = []
        self.traces: list[list[str]] = []
        self.history: list[list[frozenset[int]]] = []
        # incnt[i][v] = number of neighbours of v inside set i, for every v
        # with at least one such neighbour (members of the set included)
        self.incnt: list[dict[int, int]] = []
        self.escape: GoodSetEscape | None = None

    def live_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.sets) if s is not None]

    def seed(self, v: int) -> int:
        i = len(self.sets)
        self.sets.append({v})
        self.traces.append([f"rule1 v={v} -> {format_set({v})}"])
        self.history.append([frozenset((v,))])
        self.incnt.append({u: 1 for u in self.G.neighbours(v)})
        self.check_cap(i)
        return i

    def check_cap(self, i: int) -> bool:
        """Oversize escape if set i exceeded n/k. Returns True if escaped."""
        s = self.sets[i]
        if self.k * len(s) <= self.n:
            return False
        best_pos = None
        best_size = -1
        for pos, snap in enumerate(self.history[i]):
            if self.k * len(snap) <= self.n and len(snap) >= best_size:
                best_pos, best_size = pos, len(snap)
        if best_pos is None:
            raise InternalInvariantBreach("oversize set with no capped intermediate")
        witness = self.history[i][best_pos]
        if 2 * self.k * len(witness) < self.n:
            raise InternalInvariantBreach(
                f"oversize intermediate of size {len(witness)} below n/2k"
            )
        self.escape = GoodSetEscape(
            kind="OversizeGoodSet",
            witness_set=witness,
            detail=(
                f"set grew to {len(s)} with k={self.k} n={self.n}; "
                f"reporting traced intermediate of size {len(witness)}"
            ),
            witness_trace=tuple(self.traces[i][: best_pos + 1]),
        )
        return True

    def absorbable(self, i: int) -> int | None:
        """Lowest-id outside vertex whose degree drops below k without set i."""
        s = self.sets[i]
        best = None
        for v, cnt in self.incnt[i].items():
            if v in s:
                continue
            if self.G.degree(v) - cnt <= self.k - 1:
                if best is None or v < best:
                    best = v
        return best

    def absorb(self, i: int, v: int) -> bool:
        s = self.sets[i]
        s.add(v)
        inc = self.incnt[i]
        for u in self.G.neighbours(v):
            inc[u] = inc.get(u, 0) + 1
        self.traces[i].append(f"rule2 v={v} -> {format_set(s)}")
        self.history[i].append(frozenset(s))
        return self.check_cap(i)

    def saturate(self, i: int) -> bool:
        while (v := self.absorbable(i)) is not None:
            if self.absorb(i, v):
                return True
        return False

    def find_merge(self) -> tuple[int, int, int] | None:
        """Lex-lowest live pair that overlaps (rule 3) or is adjacent (rule 4)."""
        live = self.live_indices()
        for a in range(len(live)):
            i = live[a]
            si = self.sets[i]
            for b in range(a + 1, len(live)):
                j = live[b]
                sj = self.sets[j]
                small, big = (si, sj) if len(si) <= len(sj) else (sj, si)
                if any(v in big for v in small):
                    return i, j, 3
                inc = self.incnt[i]
                if any(inc.get(v, 0) for v in sj):
                    return i, j, 4
        return None

    def sparse_cut_check(self, i: int, j: int) -> bool:
        X = self.sets[i] & self.sets[j]
        bndry = self.G.boundary_edge_count(X)
        if bndry <= (self.k - 1) * len(X):
            self.escape = GoodSetEscape(
                kind="SparseCut",
                witness_set=frozenset(X),
                detail=(
                    f"rule3 intersection of {format_set(self.sets[i])} and "
                    f"{format_set(self.sets[j])}: boundary {bndry} <= {(self.k - 1) * len(X)}"
                ),
                witness_trace=(),
            )
            return True
        return False

    def merge(self, i: int, j: int, rule: int) -> bool:
        si, sj = self.sets[i], self.sets[j]
        line = f"rule{rule} {format_set(si)}+{format_set(sj)} -> {format_set(si | sj)}"
        union = si | sj
        self.sets[i] = union
        self.sets[j] = None
        inc: dict[int, int] = {}
        for v in union:
            for u in self.G.neighbours(v):
                inc[u] = inc.get(u, 0) + 1
        self.incnt[i] = inc
        self.traces[i] = self.traces[i] + self.traces[j] + [line]
        self.traces[j] = []
        self.history[i] = self.history[i] + self.history[j] + [frozenset(union)]
        self.history[j] = []
        return self.check_cap(i)


def _final_family(G: Graph, k: int, cl: _Closure) -> GoodFamily:
    members = []
    for i in cl.live_indices():
        members.append((frozenset(cl.sets[i]), tuple(cl.traces[i])))
    members.sort(key=lambda pair: (-len(pair[0]), min(pair[0])))
    fam = GoodFamily(
        members=tuple(d for d, _ in members),
        traces=tuple(tr for _, tr in members),
    )
    _assert_family(G, k, fam)
    return fam


def _assert_family(G: Graph, k: int, fam: GoodFamily) -> None:
    owner: dict[int, int] = {}
    for idx, d in enumerate(fam.members):
        if not d:
            raise InternalInvariantBreach("empty good set in family")
        for v in d:
            if v in owner:
                raise InternalInvariantBreach(f"vertex {v} in two members")
            owner[v] = idx
    for v, idx in owner.items():
        for u in G.neighbours(v):
            j = owner.get(u)
            if j is not None and j != idx:
                raise InternalInvariantBreach(f"edge {v}-{u} joins two members")
    for v in G.degree_exactly(k):
        if v not in owner:
            raise InternalInvariantBreach(f"degree-{k} vertex {v} uncovered")
    for d in fam.members:
        if G.boundary_edge_count(d) > (k - 1) * len(d) + 1:
            raise InternalInvariantBreach(f"member {format_set(d)} exceeds boundary bound")


def grow_good_sets(G: Graph, k: int, rng: random.Random | None = None) -> GoodFamily | GoodSetEscape:
    """Run the closure to its fixpoint or first escape.

    rng switches to a randomized application order (same rule set, random
    applicable action each step); used only to test fixpoint uniqueness.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if G.n > 0 and G.min_degree() < k:
        raise PreconditionViolated(f"min degree {G.min_degree()} below k={k}")
    cl = _Closure(G, k)
    if rng is not None:
        return _grow_random_order(cl, rng)
    for v in sorted(G.degree_exactly(k)):
        cl.seed(v)
        if cl.escape:
            return cl.escape
    work = set(range(len(cl.sets)))
    while True:
        while work:
            i = min(work)
            work.discard(i)
            if cl.sets[i] is None:
                continue
            if cl.saturate(i):
                return cl.escape
        found = cl.find_merge()
        if found is None:
            break
        i, j, rule = found
        if rule == 3 and cl.sparse_cut_check(i, j):
            return cl.escape
        if cl.merge(i, j, rule):
            return cl.escape
        work.add(i)
    return _final_family(G, k, cl)


def _grow_random_order(cl: _Closure, rng: random.Random) -> GoodFamily | GoodSetEscape:
    # seeds first (their order does not matter, keep it sorted), then pick a
    # random applicable action until the fixpoint
    for v in sorted(cl.G.degree_exactly(cl.k)):
        cl.seed(v)
        if cl.escape:
            return cl.escape
    while True:
        actions: list[tuple] = []
        for i in cl.live_indices():
            s = cl.sets[i]
            for v, cnt in sorted(cl.incnt[i].items()):
                if v not in s and cl.G.degree(v) - cnt <= cl.k - 1:
                    actions.append(("absorb", i, v))
        live = cl.live_indices()
        for a in range(len(live)):
            for b in range(a + 1, len(live)):
                i, j = live[a], live[b]
                si, sj = cl.sets[i], cl.sets[j]
                if si & sj:
                    actions.append(("merge", i, j, 3))
                elif any(cl.incnt[i].get(v, 0) for v in sj):
                    actions.append(("merge", i, j, 4))
        if not actions:
            break
        act = actions[rng.randrange(len(actions))]
        if act[0] == "absorb":
            if cl.absorb(act[1], act[2]):
                return cl.escape
        else:
            _, i, j, rule = act
            if rule == 3 and cl.sparse_cut_check(i, j):
                return cl.escape
            if cl.merge(i, j, rule):
                return cl.escape
    return _final_family(cl.G, cl.k, cl)


def audit_good_set(G: Graph, D, k: int, n_cap_check: bool = False) -> GoodSetReport:
    """Recompute the boundary bound (and optionally the n/k cap) for one set."""
    Ds = frozenset(D)
    if not Ds:
        raise DomainError("empty set cannot be audited")
    if not Ds <= G.vertex_set:
        raise UnknownVertex(f"vertex {min(Ds - G.vertex_set)} not in graph")
    boundary = G.boundary_edge_count(Ds)
    bound = (k - 1) * len(Ds) + 1
    cap_ok = (k * len(Ds) <= G.n) if n_cap_check else None
    return GoodSetReport(
        size=len(Ds),
        boundary=boundary,
        bound=bound,
        passed=boundary <= bound,
        cap_ok=cap_ok,
    )


def remove_and_peel(G: Graph, D, k: int) -> Graph | EmptyCore:
    """Delete D, then peel to the k-core; EmptyCore if nothing is left."""
    Ds = frozenset(D)
    if not Ds:
        raise DomainError("D must be non-empty")
    if not Ds <= G.vertex_set:
        raise UnknownVertex(f"vertex {min(Ds - G.vertex_set)} not in graph")
    if len(Ds) > G.n - k + 1:
        raise DomainError(f"|D| = {len(Ds)} exceeds n-k+1 = {G.n - k + 1}")
    core = peel_to_core(G.delete(Ds), k).core
    if core.n == 0:
        return EmptyCore()
    return core
