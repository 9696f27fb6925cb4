"""Simple undirected graphs, squares and distance-2 neighborhoods.

Vertices are dense integers ``0..n-1``.  Graphs are immutable; every
operation here returns a new object.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import CapExceeded

MAX_CYCLE_CAP = 12


class Graph:
    """Immutable simple graph stored as per-vertex neighbor sets."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)

    @classmethod
    def from_masks(cls, masks: list[int]) -> "Graph":
        n = len(masks)
        return cls(n, ((u, v) for u in range(n) for v in _bits(masks[u]) if u < v))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        out = []
        for a in self.adj:
            x = 0
            for w in a:
                x |= 1 << w
            out.append(x)
        return tuple(out)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @cached_property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled densely; also returns new->old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph(len(keep), edges), keep

    def remove_edges(self, drop: Iterable[tuple[int, int]]) -> "Graph":
        gone = {frozenset(e) for e in drop}
        return Graph(self.n, (e for e in self.edges() if frozenset(e) not in gone))


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def square(g: Graph) -> Graph:
    """Join every pair of vertices at distance one or two."""
    masks = g.masks
    out = []
    for v in range(g.n):
        x = masks[v]
        for w in g.adj[v]:
            x |= masks[w]
        out.append(x & ~(1 << v))
    return Graph.from_masks(out)


def distance2_neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise IndexError(v)
    out = set(g.adj[v])
    for w in g.adj[v]:
        out |= g.adj[w]
    out.discard(v)
    return frozenset(out)


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class VertexClass:
    """Big/small split at ``threshold`` plus the S_i refinement of the small side."""

    threshold: int
    big: frozenset[int]
    small: frozenset[int]
    s: dict[int, frozenset[int]] = field(hash=False)

    def big_count(self, g: Graph, v: int) -> int:
        return sum(1 for w in g.adj[v] if w in self.big)

    def in_s(self, i: int, v: int) -> bool:
        return v in self.s.get(i, ())


def default_threshold(g: Graph) -> int:
    return max(1, math.ceil(math.sqrt(g.max_degree)))


def classify_vertices(g: Graph, beta: int | None = None) -> VertexClass:
    if beta is None:
        beta = default_threshold(g)
    if beta < 1:
        raise ValueError("threshold must be >= 1")
    big = frozenset(v for v in range(g.n) if g.degree(v) >= beta)
    small = frozenset(range(g.n)) - big
    buckets: dict[int, set[int]] = {}
    for v in small:
        i = sum(1 for w in g.adj[v] if w in big)
        buckets.setdefault(i, set()).add(v)
    return VertexClass(beta, big, small, {i: frozenset(b) for i, b in sorted(buckets.items())})


def forbidden_cycles(g: Graph, lengths: Iterable[int], cap: int = MAX_CYCLE_CAP) -> list[tuple[int, ...]]:
    """All cycles whose length is in ``lengths``, one representative per cycle.

    A cycle is reported as a vertex tuple starting at its smallest vertex,
    with the second vertex smaller than the last (kills rotation and
    reflection duplicates).
    """
    wanted = set(lengths)
    if cap > MAX_CYCLE_CAP:
        raise CapExceeded(f"cap {cap} exceeds the exhaustive limit {MAX_CYCLE_CAP}")
    too_long = [L for L in wanted if L > cap]
    if too_long:
        raise CapExceeded(f"requested length {max(too_long)} exceeds cap {cap}")
    wanted = {L for L in wanted if L >= 3}
    if not wanted:
        return []
    longest = max(wanted)
    found: list[tuple[int, ...]] = []
    adj = [sorted(a) for a in g.adj]

    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(u: int) -> None:
            depth = len(path)
            for w in adj[u]:
                if w == s:
                    if depth in wanted and depth >= 3 and path[1] < path[-1]:
                        found.append(tuple(path))
                    continue
                if w < s or w in on_path or depth >= longest:
                    continue
                path.append(w)
                on_path.add(w)
                extend(w)
                path.pop()
                on_path.discard(w)

        extend(s)
    return sorted(found, key=lambda c: (len(c), c))


def has_cycle_of_length(g: Graph, length: int) -> bool:
    return bool(forbidden_cycles(g, {length}, cap=max(length, 3)))
