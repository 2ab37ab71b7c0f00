"""Iterated removal of low-degree vertices down to the k-core."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graph import Graph


@dataclass(frozen=True)
class PeelResult:
    core: Graph
    # (vertex, degree at removal time), in removal order
    removed_order: tuple[tuple[int, int], ...]


def peel_to_core(G: Graph, k: int, order: str = "lowest") -> PeelResult:
    """Remove vertices of degree <= k-1 one at a time until none remain.

    order picks which candidate goes first ("lowest" id is canonical;
    "highest" exists to test that the surviving core is order-independent).
    """
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if order not in ("lowest", "highest"):
        raise DomainError(f"unknown peel order {order!r}")
    pick = min if order == "lowest" else max
    deg = {v: G.degree(v) for v in G.vertices}
    low = {v for v, d in deg.items() if d <= k - 1}
    removed: list[tuple[int, int]] = []
    gone: set[int] = set()
    while low:
        v = pick(low)
        low.discard(v)
        removed.append((v, deg[v]))
        gone.add(v)
        for u in G.neighbours(v):
            if u in gone:
                continue
            deg[u] -= 1
            if deg[u] <= k - 1:
                low.add(u)
    return PeelResult(core=G.delete(gone), removed_order=tuple(removed))


def fact1_threshold(k: int, n: int) -> int:
    """Largest edge count that does not yet force a subgraph of min degree k.

    Any graph on n vertices with strictly more edges contains one; the
    generalized wheel shows the value is sharp.
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    if n < k - 1:
        raise DomainError(f"n must be at least k-1 = {k - 1}, got {n}")
    return (k - 1) * (n - k + 2) + (k - 2) * (k - 3) // 2
