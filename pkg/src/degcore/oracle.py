"""Reference oracle and input generators for the test surface.

The oracle is an intentionally naive bitmask scan.  It must stay independent
of the production code paths (no peeling shortcut), since the agreement tests
compare the two.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DomainError, TooLarge
from .graph import Graph

ORACLE_MAX_N = 20


@dataclass(frozen=True)
class OracleResult:
    found: bool
    min_size: int | None
    example: frozenset[int] | None


def brute_min_subgraph(G: Graph, k: int) -> OracleResult:
    """Smallest vertex set inducing min degree >= k, by exhaustive scan.

    Subsets are visited by size then lexicographically, so the returned
    example is canonical. Guarded to n <= 20.
    """
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if G.n > ORACLE_MAX_N:
        raise TooLarge(f"oracle limited to n <= {ORACLE_MAX_N}, got n = {G.n}")
    vs = G.vertices
    pos = {v: i for i, v in enumerate(vs)}
    masks = [0] * G.n
    for v in vs:
        mv = 0
        for u in G.neighbours(v):
            mv |= 1 << pos[u]
        masks[pos[v]] = mv
    for size in range(k + 1, G.n + 1):
        for combo in itertools.combinations(range(G.n), size):
            sub = 0
            for i in combo:
                sub |= 1 << i
            if all((masks[i] & sub).bit_count() >= k for i in combo):
                return OracleResult(True, size, frozenset(vs[i] for i in combo))
    return OracleResult(False, None, None)


def gen_wheel(k: int, n: int) -> Graph:
    """Sharpness witness: a (k-2)-clique joined to a cycle on the rest.

    Has exactly the threshold edge count and an empty k-core.
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    if n < k + 1:
        raise DomainError(f"n must be at least k+1 = {k + 1}, got {n}")
    clique = list(range(k - 2))
    cycle = list(range(k - 2, n))
    edges: list[tuple[int, int]] = []
    edges.extend(itertools.combinations(clique, 2))
    for i, c in enumerate(cycle):
        edges.append((c, cycle[(i + 1) % len(cycle)]))
    edges.extend((a, c) for a in clique for c in cycle)
    return Graph.from_edges(range(n), ((min(u, v), max(u, v)) for u, v in edges))


def _unrank_pair(idx: int, n: int) -> tuple[int, int]:
    u = 0
    while idx >= n - 1 - u:
        idx -= n - 1 - u
        u += 1
    return u, u + 1 + idx


def gen_random_edges(n: int, m: int, seed: int) -> Graph:
    """Uniform random simple graph with exactly m edges, reproducible by seed."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    limit = n * (n - 1) // 2
    if m < 0 or m > limit:
        raise DomainError(f"cannot place {m} edges on {n} vertices (max {limit})")
    rng = random.Random(seed)
    picks = rng.sample(range(limit), m)
    return Graph.from_edges(range(n), (_unrank_pair(i, n) for i in picks))


def gen_near_threshold(n: int, k: int, t: int, excess: int, seed: int) -> Graph:
    """Random graph with (k-1)n - t + excess edges."""
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    m = (k - 1) * n - t + excess
    if m < 0:
        raise DomainError(f"edge target {m} is negative")
    return gen_random_edges(n, m, seed)
