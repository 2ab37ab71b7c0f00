"""Immutable undirected simple graphs with stable integer vertex ids.

Deletion preserves the surviving ids, so subgraphs produced anywhere in the
pipeline can be compared against the original input directly.  The text format
is the usual edge list: optional "p <n> <m>" header, one "u v" pair per line,
"#" starts a comment.  Canonical serialization always writes the header and
sorts edges lexicographically with u < v, which is what the content hash and
the byte-identical round-trip guarantee are defined over.
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable

from .errors import DomainError, GraphFormatError, UnknownVertex


class Graph:
    """Frozen adjacency structure. Use from_edges / parse_edge_list to build."""

    __slots__ = ("_adj", "_vset", "_m", "_nsets", "_hash")

    def __init__(self, adj: dict[int, tuple[int, ...]]) -> None:
        # internal: callers must pass a well-formed adjacency (sorted tuples,
        # symmetric, no loops); public constructors validate.
        self._adj = adj
        self._vset = frozenset(adj)
        self._m = sum(len(nbrs) for nbrs in adj.values()) // 2
        self._nsets: dict[int, frozenset[int]] = {}
        self._hash: int | None = None

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        vs = set()
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise DomainError(f"vertex ids must be non-negative integers, got {v!r}")
            vs.add(v)
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in edges:
            if u == v:
                raise DomainError(f"self loop at {u}")
            if u not in adj or v not in adj:
                missing = u if u not in adj else v
                raise UnknownVertex(f"edge ({u}, {v}) references unknown vertex {missing}")
            if v in adj[u]:
                raise DomainError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls({v: tuple(sorted(adj[v])) for v in sorted(adj)})

    # basic accessors

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    @property
    def vertex_set(self) -> frozenset[int]:
        return self._vset

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def neighbours(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} not in graph") from None

    def neighbour_set(self, v: int) -> frozenset[int]:
        got = self._nsets.get(v)
        if got is None:
            got = frozenset(self.neighbours(v))
            self._nsets[v] = got
        return got

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def min_degree(self) -> int:
        if not self._adj:
            raise DomainError("min_degree of empty graph")
        return min(len(nbrs) for nbrs in self._adj.values())

    # degree classes

    def degree_at_most(self, i: int) -> frozenset[int]:
        return frozenset(v for v, nbrs in self._adj.items() if len(nbrs) <= i)

    def degree_exactly(self, i: int) -> frozenset[int]:
        return frozenset(v for v, nbrs in self._adj.items() if len(nbrs) == i)

    # subgraphs

    def _check_subset(self, X: Iterable[int]) -> frozenset[int]:
        Xs = frozenset(X)
        if not Xs <= self._vset:
            bad = min(Xs - self._vset)
            raise UnknownVertex(f"vertex {bad} not in graph")
        return Xs

    def delete(self, X: Iterable[int]) -> "Graph":
        """Induced subgraph on V minus X."""
        Xs = self._check_subset(X)
        if not Xs:
            return self
        return Graph(
            {
                v: tuple(u for u in nbrs if u not in Xs)
                for v, nbrs in self._adj.items()
                if v not in Xs
            }
        )

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph on the given vertex set."""
        ks = self._check_subset(keep)
        return self.delete(self._vset - ks)

    def drop_edge(self, u: int, v: int) -> "Graph":
        """Same vertices, one edge removed."""
        if v not in self.neighbours(u):
            raise DomainError(f"no edge ({u}, {v})")
        adj = dict(self._adj)
        adj[u] = tuple(x for x in adj[u] if x != v)
        adj[v] = tuple(x for x in adj[v] if x != u)
        return Graph(adj)

    def boundary_edge_count(self, X: Iterable[int]) -> int:
        """Number of edges with at least one endpoint in X."""
        Xs = self._check_subset(X)
        total = 0
        inside = 0
        for v in Xs:
            for u in self._adj[v]:
                total += 1
                if u in Xs:
                    inside += 1
        # total counts inside edges twice and crossing edges once
        return total - inside // 2

    # connectivity

    def components(self) -> tuple[frozenset[int], ...]:
        """Connected components, sorted by (size, smallest vertex)."""
        seen: set[int] = set()
        comps = []
        for start in self._adj:
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            comp = {start}
            while stack:
                v = stack.pop()
                for u in self._adj[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.add(u)
                        stack.append(u)
            comps.append(frozenset(comp))
        comps.sort(key=lambda c: (len(c), min(c)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # equality / hashing on structure

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format. Raises GraphFormatError on malformed input."""
    n_declared: int | None = None
    m_declared: int | None = None
    edges: list[tuple[int, int]] = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n_declared is not None or edges:
                raise GraphFormatError(f"line {lineno}: stray header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: header needs 'p <n> <m>'")
            try:
                n_declared, m_declared = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header field") from None
            if n_declared < 0 or m_declared < 0:
                raise GraphFormatError(f"line {lineno}: negative header field")
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self loop at {u}")
        edges.append((u, v))
        max_id = max(max_id, u, v)
    if n_declared is not None:
        if max_id >= n_declared:
            raise GraphFormatError(f"vertex {max_id} out of range for n={n_declared}")
        if m_declared != len(edges):
            raise GraphFormatError(f"header declares {m_declared} edges, found {len(edges)}")
        n = n_declared
    else:
        n = max_id + 1
    seen = set()
    for u, v in edges:
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
    return Graph.from_edges(range(n), edges)


def serialize_edge_list(G: Graph) -> str:
    """Canonical text form: header plus sorted edges. Needs contiguous ids."""
    if G.vertices != tuple(range(G.n)):
        raise DomainError("serialization requires vertex ids 0..n-1")
    lines = [f"p {G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def content_hash(G: Graph) -> str:
    """sha256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize_edge_list(G).encode("utf-8")).hexdigest()
