"""Degeneracy peeling and the back-degree certificate for squares."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, square

GOOD_ORDER_SLACK = 72


def degeneracy_order(h: Graph) -> tuple[list[int], int]:
    """Min-degree peeling with lowest-id tie-break.

    Returns the reverse extraction sequence and the largest degree seen at
    extraction time.
    """
    deg = [h.degree(v) for v in range(h.n)]
    heap = [(deg[v], v) for v in range(h.n)]
    heapq.heapify(heap)
    removed = [False] * h.n
    extracted = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        extracted.append(v)
        k = max(k, d)
        for w in h.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return extracted[::-1], k


def back_degrees(h: Graph, order: Sequence[int]) -> list[int]:
    """Per-vertex count of neighbors in ``h`` that appear earlier in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != h.n or set(pos) != set(range(h.n)):
        raise ValueError("order is not a permutation of the vertex set")
    return [sum(1 for w in h.adj[v] if pos[w] < pos[v]) for v in range(h.n)]


@dataclass(frozen=True)
class DegeneracyCertificate:
    order: tuple[int, ...]
    back_degrees: tuple[int, ...]
    max_back_degree: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.max_back_degree <= self.bound


def good_order_certificate(g: Graph, slack: int = GOOD_ORDER_SLACK) -> DegeneracyCertificate:
    """Peel the square of ``g`` and compare its back-degrees to Δ(g) + slack.

    Planarity and C4-freeness are the caller's business; a failing
    certificate is reported, not raised.
    """
    sq = square(g)
    order, _ = degeneracy_order(sq)
    back = back_degrees(sq, order)
    return DegeneracyCertificate(tuple(order), tuple(back), max(back, default=0), g.max_degree + slack)


def greedy_color_from_order(h: Graph, order: Sequence[int]) -> list[int]:
    """First-fit coloring along ``order`` with colors 1, 2, ..."""
    color = [0] * h.n
    for v in order:
        used = {color[w] for w in h.adj[v]}
        c = 1
        while c in used:
            c += 1
        color[v] = c
    return color


def is_proper(h: Graph, color: Sequence[int]) -> bool:
    return len(color) == h.n and all(color[u] != color[v] for u, v in h.edges())
