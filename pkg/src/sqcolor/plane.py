"""Plane graphs given by rotation systems.

``rotation[v]`` lists the neighbors of ``v`` in clockwise order.  A face
is traced as a cyclic sequence of darts ``(u, v)``: on arriving at ``v``
from ``u`` the walk leaves along the neighbor that follows ``u`` in
``rotation[v]``.  Face length counts darts, so a bridge contributes two
to the single face it borders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import Disconnected, InvalidRotation
from .graph import Graph

Dart = tuple[int, int]


@dataclass(frozen=True)
class HalfEdge:
    vertex: int
    edge: int
    side: int


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.graph
        if len(self.rotation) != g.n:
            raise InvalidRotation(f"rotation has {len(self.rotation)} entries for {g.n} vertices")
        for v, rot in enumerate(self.rotation):
            if len(rot) != len(set(rot)) or set(rot) != g.adj[v]:
                raise InvalidRotation(f"rotation({v}) is not a permutation of its neighbors")

    @classmethod
    def from_rotation(cls, rotation: Sequence[Sequence[int]]) -> "PlaneGraph":
        n = len(rotation)
        edges = [(v, w) for v in range(n) for w in rotation[v] if v < w]
        for v in range(n):
            for w in rotation[v]:
                if not 0 <= w < n or v not in rotation[w]:
                    raise InvalidRotation(f"half-edge {v}->{w} has no partner")
        return cls(Graph(n, edges), tuple(tuple(r) for r in rotation))

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Sequence[int]]) -> "PlaneGraph":
        """Build the rotation system whose face walks are exactly ``faces``.

        Each face is a cyclic vertex sequence; every directed edge must
        occur in exactly one face.
        """
        succ: dict[int, dict[int, int]] = {v: {} for v in range(n)}
        seen: set[Dart] = set()
        for face in faces:
            k = len(face)
            for i in range(k):
                a, b, c = face[i - 1], face[i], face[(i + 1) % k]
                if (b, c) in seen:
                    raise InvalidRotation(f"dart {b}->{c} appears in two faces")
                seen.add((b, c))
                succ[b][a] = c
        rotation = []
        for v in range(n):
            nxt = succ[v]
            if not nxt:
                rotation.append(())
                continue
            start = min(nxt)
            order = [start]
            while True:
                w = nxt[order[-1]]
                if w == start:
                    break
                order.append(w)
            if len(order) != len(nxt):
                raise InvalidRotation(f"faces around {v} do not close into one cycle")
            rotation.append(tuple(order))
        return cls.from_rotation(rotation)

    @cached_property
    def _position(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(rot)} for rot in self.rotation)

    def succ(self, v: int, u: int) -> int:
        """Neighbor of ``v`` that follows ``u`` in clockwise order."""
        rot = self.rotation[v]
        return rot[(self._position[v][u] + 1) % len(rot)]

    @cached_property
    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        return tuple(trace_faces(self))

    @cached_property
    def face_of_dart(self) -> dict[Dart, int]:
        return {d: i for i, f in enumerate(self.faces) for d in f}

    def face_length(self, f: int) -> int:
        return len(self.faces[f])

    def face_vertices(self, f: int) -> list[int]:
        return [u for u, _ in self.faces[f]]

    def edge_faces(self, u: int, v: int) -> tuple[int, int]:
        """Faces on the two sides of edge uv (equal for a bridge)."""
        return self.face_of_dart[(u, v)], self.face_of_dart[(v, u)]

    @cached_property
    def edge_ids(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.graph.edges())}

    def relabel(self, perm: Sequence[int]) -> "PlaneGraph":
        """Apply vertex renaming ``v -> perm[v]``."""
        n = self.graph.n
        rot: list[tuple[int, ...]] = [()] * n
        for v in range(n):
            rot[perm[v]] = tuple(perm[w] for w in self.rotation[v])
        return PlaneGraph.from_rotation(rot)

    def delete_edges(self, drop: Iterable[tuple[int, int]]) -> "PlaneGraph":
        gone = {frozenset(e) for e in drop}
        rot = [tuple(w for w in r if frozenset((v, w)) not in gone) for v, r in enumerate(self.rotation)]
        return PlaneGraph.from_rotation(rot)

    def induced(self, keep: Iterable[int]) -> tuple["PlaneGraph", list[int]]:
        """Sub-embedding on ``keep``, relabelled densely (returns new->old ids)."""
        old = sorted(set(keep))
        index = {v: i for i, v in enumerate(old)}
        rot = [tuple(index[w] for w in self.rotation[v] if w in index) for v in old]
        return PlaneGraph.from_rotation(rot), old


def trace_faces(pg: PlaneGraph) -> list[tuple[Dart, ...]]:
    darts = sorted((v, w) for v in range(pg.graph.n) for w in pg.rotation[v])
    used: set[Dart] = set()
    faces = []
    for start in darts:
        if start in used:
            continue
        face = []
        d = start
        while d not in used:
            used.add(d)
            face.append(d)
            u, v = d
            d = (v, pg.succ(v, u))
        if d != start:
            raise InvalidRotation(f"face walk from {start} did not close")
        faces.append(tuple(face))
    return faces


def euler_check(pg: PlaneGraph) -> bool:
    g = pg.graph
    if not g.is_connected():
        raise Disconnected("Euler's formula is checked per component; graph is disconnected")
    if g.n == 0:
        return True
    return g.n - g.m + len(pg.faces) == 2


def euler_check_components(pg: PlaneGraph) -> bool:
    """Euler's formula on every connected component separately."""
    for comp in pg.graph.components():
        sub, _ = pg.induced(comp)
        if not euler_check(sub):
            return False
    return True


def incident_faces(pg: PlaneGraph, x) -> list[int]:
    """Faces around a vertex (in rotation order) or the two sides of an edge."""
    if isinstance(x, tuple):
        u, v = x
        if not pg.graph.has_edge(u, v):
            raise KeyError(f"no edge {u}-{v}")
        return list(pg.edge_faces(u, v))
    return [pg.face_of_dart[(x, w)] for w in pg.rotation[x]]


def half_edges(pg: PlaneGraph) -> list[HalfEdge]:
    """Half-edges grouped per vertex in rotation order."""
    ids = pg.edge_ids
    out = []
    for v in range(pg.graph.n):
        for w in pg.rotation[v]:
            e = (min(v, w), max(v, w))
            out.append(HalfEdge(v, ids[e], 0 if v == e[0] else 1))
    return out


def rotation_from_coords(coords: Sequence[tuple[float, float]], edges: Iterable[tuple[int, int]]) -> PlaneGraph:
    """Clockwise rotation of a straight-line drawing."""
    n = len(coords)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = []
    for v in range(n):
        x0, y0 = coords[v]
        rot.append(tuple(sorted(nbrs[v], key=lambda w: -math.atan2(coords[w][1] - y0, coords[w][0] - x0))))
    return PlaneGraph.from_rotation(rot)


def dual_faces(pg: PlaneGraph) -> list[list[int]]:
    """For each vertex, the cyclic list of faces around it (dual face lists)."""
    return [incident_faces(pg, v) for v in range(pg.graph.n)]
