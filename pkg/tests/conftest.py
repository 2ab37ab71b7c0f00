"""Shared graph builders and randomized instance generators."""

from __future__ import annotations

import itertools
import random

from degcore import (
    Graph,
    ShadowContext,
    gen_random_edges,
    grow_good_sets,
    init_state,
    partition_dyadic,
)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(range(n), itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def cross_k4() -> Graph:
    """Two K4 blocks {0..3}, {4..7} joined by the matching 0-4, 1-5, 2-6.

    Exactly two degree-3 vertices (3 and 7); 15 edges = 2*8 - 1.
    """
    edges = list(itertools.combinations(range(4), 2))
    edges += [(u + 4, v + 4) for u, v in itertools.combinations(range(4), 2)]
    edges += [(0, 4), (1, 5), (2, 6)]
    return Graph.from_edges(range(8), edges)


# Six-cycle core with three degree-3 pendant pairs hanging off it.  Good-set
# growth yields exactly the members {6,7}, {8,9}, {10,11}; two dyadic classes
# with norms 2 and 4; the first class alone already clears the n/(100k) mass.
ANCHOR_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
    (6, 7), (8, 9), (10, 11),
    (0, 6), (1, 6), (2, 7), (3, 7),
    (4, 8), (5, 8), (0, 9), (1, 9),
    (2, 10), (3, 10), (4, 11), (5, 11),
)


def colouring_anchor() -> Graph:
    return Graph.from_edges(range(12), ANCHOR_EDGES)


def anchor_pipeline():
    """Anchor graph taken up to the initial all-uncoloured state (k=3)."""
    G = colouring_anchor()
    family = grow_good_sets(G, 3)
    buckets = partition_dyadic(family, G.n, 3)
    return G, family, buckets, init_state(buckets, 3)


def paired_cycle_instance(seed: int) -> Graph:
    """14-cycle plus seven pendant pairs, each pair vertex stubbed twice.

    All pair vertices end at degree exactly 3, cycle vertices at 4; the seven
    pairs become the good-set members and split into three dyadic classes.
    """
    rng = random.Random(seed)
    cyc = [(i, (i + 1) % 14) for i in range(14)]
    pairs = [(14 + 2 * i, 15 + 2 * i) for i in range(7)]
    slots = [v for v in range(14) for _ in range(2)]
    while True:
        rng.shuffle(slots)
        it = iter(slots)
        stubs = []
        ok = True
        for a, b in pairs:
            targets = [next(it) for _ in range(4)]
            # all four stubs of one pair hit distinct cycle vertices, so
            # deleting the pair costs any cycle vertex at most one edge
            if len(set(targets)) < 4:
                ok = False
                break
            stubs += [(a, targets[0]), (a, targets[1]), (b, targets[2]), (b, targets[3])]
        if ok:
            return Graph.from_edges(range(28), cyc + pairs + stubs)


def _disjoint_members(G: Graph, k: int, rng: random.Random, cap: int = 3):
    """Pick pairwise disjoint singletons / adjacent pairs of degree-k vertices."""
    cand = sorted(G.degree_exactly(k))
    rng.shuffle(cand)
    used: set[int] = set()
    members = []
    for v in cand:
        if len(members) == cap:
            break
        if v in used:
            continue
        mates = [u for u in G.neighbours(v) if u in G.degree_exactly(k) and u not in used and u != v]
        if mates and rng.random() < 0.5:
            u = rng.choice(mates)
            members.append(frozenset((v, u)))
            used |= {v, u}
        else:
            members.append(frozenset((v,)))
            used.add(v)
    return tuple(members)


def shadow_case(seed: int):
    """Deterministic (context, low vertex) pair for shadow property runs."""
    for probe in itertools.count():
        rng = random.Random(seed * 7919 + probe)
        k = rng.choice((2, 3, 4))
        n = rng.randint(5, 14)
        m = rng.randint(n - 1, min(n * (n - 1) // 2, 2 * n))
        G = gen_random_edges(n, m, rng.randrange(2**30))
        lows = sorted(G.degree_at_most(k - 1))
        if not lows:
            continue
        ctx = ShadowContext(G, _disjoint_members(G, k, rng), k)
        return ctx, rng.choice(lows)


def core_free_context(seed: int) -> ShadowContext:
    """Context whose graph has no subgraph of minimum degree k.

    Built insertion-first: vertex v gets at most k-1 backward edges, so the
    highest-id vertex of any induced subgraph always has degree below k.
    Member vertices are then topped up to degree exactly k with pendants,
    which preserves the backward-edge bound for k >= 2.
    """
    rng = random.Random(seed)
    k = rng.choice((2, 3))
    n = rng.randint(4, 10)
    edges: list[tuple[int, int]] = []
    deg = [0] * n
    for v in range(1, n):
        for u in rng.sample(range(v), min(v, rng.randint(0, k - 1))):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    nxt = n
    members = []
    used: set[int] = set()
    cand = [v for v in range(n) if deg[v] <= k]
    rng.shuffle(cand)
    for v in cand[: rng.randint(0, 2)]:
        if v in used:
            continue
        group = {v}
        mates = [u for (u, x) in edges if x == v and deg[u] <= k and u not in used]
        mates += [x for (u, x) in edges if u == v and deg[x] <= k and x not in used]
        if mates and rng.random() < 0.5:
            group.add(rng.choice(mates))
        for mv in sorted(group):
            for _ in range(k - deg[mv]):
                edges.append((mv, nxt))
                nxt += 1
        used |= group
        members.append(frozenset(group))
    G = Graph.from_edges(range(nxt), edges)
    return ShadowContext(G, tuple(members), k)


def _dedupe(edges):
    return sorted({(min(u, v), max(u, v)) for u, v in edges})


def extend_admissible(
    ctx: ShadowContext,
    S,
    seed: int,
    skip_lift: int | None = None,
    hit_member: bool = False,
    sprinkle: bool = True,
) -> Graph:
    """Supergraph: fresh (k+1)-clique, every s in S topped up to degree k.

    skip_lift leaves one s low (breaks low-degree containment); hit_member
    wires a new vertex into a collection member (breaks member isolation).
    """
    rng = random.Random(seed)
    H, k = ctx.H, ctx.k
    base = max(H.vertices) + 1
    new = list(range(base, base + k + 1))
    edges = list(H.edges()) + list(itertools.combinations(new, 2))
    member_vs = set().union(*ctx.collection) if ctx.collection else set()
    for s in sorted(S):
        if s == skip_lift:
            continue
        edges += [(s, c) for c in new[: k - H.degree(s)]]
    if sprinkle:
        pool = [v for v in H.vertices if v not in member_vs]
        for v in rng.sample(pool, min(len(pool), rng.randint(0, 3))):
            edges.append((v, rng.choice(new)))
    if hit_member and member_vs:
        edges.append((min(member_vs), new[0]))
    return Graph.from_edges(list(H.vertices) + new, _dedupe(edges))


def extend_keeping_vertex(ctx: ShadowContext, w: int, seed: int) -> Graph:
    """Supergraph leaving w and every collection member untouched."""
    rng = random.Random(seed)
    H, k = ctx.H, ctx.k
    base = max(H.vertices) + 1
    new = list(range(base, base + k + 1))
    edges = list(H.edges()) + list(itertools.combinations(new, 2))
    member_vs = set().union(*ctx.collection) if ctx.collection else set()
    pool = [v for v in H.vertices if v not in member_vs and v != w]
    for v in rng.sample(pool, min(len(pool), rng.randint(0, 4))):
        edges.append((v, rng.choice(new)))
    return Graph.from_edges(list(H.vertices) + new, _dedupe(edges))
