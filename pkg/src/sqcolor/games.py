"""Alon-Tarsi orientations and the online list-coloring (paint) game."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .degeneracy import degeneracy_order
from .errors import TooLarge
from .exact import chromatic_number, choosability
from .graph import Graph

EULERIAN_EDGE_LIMIT = 24
AT_EDGE_LIMIT = 12
PAINT_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class Orientation:
    n: int
    arcs: tuple[tuple[int, int], ...]

    @classmethod
    def from_heads(cls, g: Graph, heads: Sequence[int]) -> "Orientation":
        """Orient the i-th edge of ``g.edges()`` toward ``heads[i]``."""
        arcs = []
        for (u, v), h in zip(g.edges(), heads):
            if h not in (u, v):
                raise ValueError(f"head {h} is not an endpoint of {u}-{v}")
            arcs.append((v, u) if h == u else (u, v))
        return cls(g.n, tuple(arcs))

    def out_degrees(self) -> list[int]:
        out = [0] * self.n
        for t, _ in self.arcs:
            out[t] += 1
        return out

    def max_out_degree(self) -> int:
        return max(self.out_degrees(), default=0)


def _half_counts(arcs: Sequence[tuple[int, int]], weight: list[int]) -> dict[int, list[int]]:
    """Map balance key -> [even count, odd count] over all arc subsets, by Gray code."""
    delta = [weight[t] - weight[h] for t, h in arcs]
    counts: dict[int, list[int]] = {0: [1, 0]}
    key = 0
    parity = 0
    chosen = [False] * len(arcs)
    for i in range(1, 1 << len(arcs)):
        bit = (i & -i).bit_length() - 1
        chosen[bit] = not chosen[bit]
        key += delta[bit] if chosen[bit] else -delta[bit]
        parity ^= 1
        slot = counts.setdefault(key, [0, 0])
        slot[parity] += 1
    return counts


def eulerian_parity_diff(d: Orientation) -> int:
    """EE(D) - EO(D) over spanning eulerian sub-digraphs, by meet in the middle.

    A subset's balance (out minus in, per vertex) is packed into one integer
    in base 2m+1; halves with opposite keys combine to an eulerian subset.
    """
    m = len(d.arcs)
    if m > EULERIAN_EDGE_LIMIT:
        raise TooLarge(f"eulerian enumeration limited to {EULERIAN_EDGE_LIMIT} arcs")
    base = 2 * m + 1
    weight = [base**v for v in range(d.n)]
    half = m // 2
    left = _half_counts(d.arcs[:half], weight)
    right = _half_counts(d.arcs[half:], weight)
    total = 0
    for key, (le, lo) in left.items():
        r = right.get(-key)
        if r:
            re_, ro = r
            total += (le * re_ + lo * ro) - (le * ro + lo * re_)
    return total


def eulerian_parity_diff_bruteforce(d: Orientation) -> int:
    """Reference: direct scan of every arc subset (small m only)."""
    diff = 0
    for mask in range(1 << len(d.arcs)):
        bal = [0] * d.n
        size = 0
        for i, (t, h) in enumerate(d.arcs):
            if mask >> i & 1:
                bal[t] += 1
                bal[h] -= 1
                size += 1
        if not any(bal):
            diff += 1 if size % 2 == 0 else -1
    return diff


def alon_tarsi_number(h: Graph, with_orientation: bool = False):
    """Least k such that some orientation with max out-degree k-1 has EE != EO."""
    edges = h.edges()
    m = len(edges)
    if m > AT_EDGE_LIMIT:
        raise TooLarge(f"Alon-Tarsi search limited to {AT_EDGE_LIMIT} edges")
    if m == 0:
        return (1, Orientation(h.n, ())) if with_orientation else 1
    by_out: dict[int, list[Orientation]] = {}
    for flips in itertools.product((0, 1), repeat=m):
        arcs = tuple((v, u) if f else (u, v) for (u, v), f in zip(edges, flips))
        d = Orientation(h.n, arcs)
        by_out.setdefault(d.max_out_degree(), []).append(d)
    for k in sorted(by_out):
        for d in by_out[k]:
            if eulerian_parity_diff(d) != 0:
                return (k + 1, d) if with_orientation else k + 1
    raise AssertionError("an acyclic orientation always has nonzero parity difference")


# ---------------------------------------------------------------- paint game

def _painter_wins(h: Graph, k: int) -> bool:
    n = h.n
    masks = h.masks

    @lru_cache(maxsize=None)
    def maximal_independent(mask: int) -> tuple[int, ...]:
        """All maximal independent sets of h[mask]."""
        if not mask:
            return (0,)
        v = (mask & -mask).bit_length() - 1
        out = []
        # sets containing v
        for rest in maximal_independent(mask & ~(1 << v) & ~masks[v]):
            out.append(rest | 1 << v)
        # sets avoiding v must contain a neighbor of v to stay maximal
        for rest in maximal_independent(mask & ~(1 << v)):
            if rest & masks[v]:
                out.append(rest)
        return tuple(out)

    @lru_cache(maxsize=None)
    def win(unc: int, budget: tuple[int, ...]) -> bool:
        if not unc:
            return True
        verts = [v for v in range(n) if unc >> v & 1]
        for r in range(1, len(verts) + 1):
            for combo in itertools.combinations(verts, r):
                s = 0
                s1 = 0
                for v in combo:
                    s |= 1 << v
                    if budget[v] == 1:
                        s1 |= 1 << v
                if any(masks[v] & s1 for v in combo if s1 >> v & 1):
                    return False
                free = s & ~s1
                for v in combo:
                    if s1 >> v & 1:
                        free &= ~masks[v]
                ok = False
                for extra in maximal_independent(free):
                    chosen = s1 | extra
                    nb = list(budget)
                    for v in combo:
                        if not chosen >> v & 1:
                            nb[v] -= 1
                    for v in range(n):
                        if chosen >> v & 1:
                            nb[v] = 0
                    if win(unc & ~chosen, tuple(nb)):
                        ok = True
                        break
                if not ok:
                    return False
        return True

    return win((1 << n) - 1, tuple([k] * n))


def paint_number(h: Graph, start: int = 1) -> int:
    """Least k for which Painter survives with k tokens on every vertex.

    Painter only needs maximal independent answers: coloring more vertices
    never hurts, since a graph's paint number bounds its subgraphs'.
    """
    if h.n > PAINT_VERTEX_LIMIT:
        raise TooLarge(f"paint game search limited to {PAINT_VERTEX_LIMIT} vertices")
    if h.n == 0:
        return 0
    k = max(1, start)
    while not _painter_wins(h, k):
        k += 1
    return k


@dataclass(frozen=True)
class ChainReport:
    chi: int
    choice: int
    paint: int
    at: int
    degeneracy_plus_one: int

    @property
    def values(self) -> tuple[int, int, int, int, int]:
        return (self.chi, self.choice, self.paint, self.at, self.degeneracy_plus_one)

    @property
    def ok(self) -> bool:
        v = self.values
        return all(a <= b for a, b in zip(v, v[1:]))


def parameter_chain_check(h: Graph) -> ChainReport:
    _, d = degeneracy_order(h)
    return ChainReport(chromatic_number(h), choosability(h), paint_number(h), alon_tarsi_number(h), d + 1)
