"""Suppression/contraction pipeline G -> G' -> G'' -> G''' and region detection.

Multigraph edges keep the path of G they stand for.  Half-edges are
``(edge_id, end)`` pairs; ``end`` 0 sits at ``ends[0]`` and 1 at ``ends[1]``,
so a loop contributes two distinct half-edges at its vertex.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import AdjacentSuppressible, UnclassifiableEdge
from .graph import Graph, VertexClass, classify_vertices
from .plane import PlaneGraph

HalfEdge = tuple[int, int]


@dataclass
class MEdge:
    id: int
    ends: list[int]
    path: tuple[int, ...]  # G-vertices from ends[0] to ends[1]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass
class MultiGraph:
    vertices: set[int]
    edges: dict[int, MEdge]
    rotation: dict[int, list[HalfEdge]]
    contracted: list[tuple[int, int]] = field(default_factory=list)  # (big, absorbed) G-edges
    suppressed: set[int] = field(default_factory=set)
    absorbed: dict[int, int] = field(default_factory=dict)  # S1 vertex -> big it merged into

    def copy(self) -> "MultiGraph":
        return copy.deepcopy(self)

    def vertex_of(self, h: HalfEdge) -> int:
        return self.edges[h[0]].ends[h[1]]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def loops(self) -> list[int]:
        return sorted(e.id for e in self.edges.values() if e.is_loop)

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for e in self.edges.values() if sorted(e.ends) == sorted((u, v)))

    def _remove_edge(self, eid: int) -> None:
        e = self.edges.pop(eid)
        for end in (0, 1):
            self.rotation[e.ends[end]].remove((eid, end))

    def faces(self) -> list[list[HalfEdge]]:
        """Face boundaries as cyclic lists of outgoing half-edges."""
        pos = {h: (v, i) for v, rot in self.rotation.items() for i, h in enumerate(rot)}
        used: set[HalfEdge] = set()
        out = []
        for start in sorted(pos):
            if start in used:
                continue
            face = []
            h = start
            while h not in used:
                used.add(h)
                face.append(h)
                twin = (h[0], 1 - h[1])
                v, i = pos[twin]
                rot = self.rotation[v]
                h = rot[(i + 1) % len(rot)]
            out.append(face)
        return out

    def two_faces(self) -> list[list[HalfEdge]]:
        """Faces bounded by exactly two distinct non-loop edges."""
        res = []
        for f in self.faces():
            if len(f) == 2 and f[0][0] != f[1][0] and not any(self.edges[h[0]].is_loop for h in f):
                res.append(f)
        return res

    def euler_ok(self) -> bool:
        """V - E + F = 1 + components for the embedded multigraph."""
        seen: set[int] = set()
        comps = 0
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges.values():
            adj[e.ends[0]].add(e.ends[1])
            adj[e.ends[1]].add(e.ends[0])
        for s in self.vertices:
            if s in seen:
                continue
            comps += 1
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        isolated = sum(1 for v in self.vertices if not self.rotation[v])
        return len(self.vertices) - len(self.edges) + len(self.faces()) + isolated == 1 + comps


def multigraph_from_plane(pg: PlaneGraph) -> MultiGraph:
    ids = pg.edge_ids
    edges = {i: MEdge(i, [u, v], (u, v)) for (u, v), i in ids.items()}
    rotation = {}
    for v in range(pg.graph.n):
        rot = []
        for w in pg.rotation[v]:
            e = (min(v, w), max(v, w))
            rot.append((ids[e], 0 if v == e[0] else 1))
        rotation[v] = rot
    return MultiGraph(set(range(pg.graph.n)), edges, rotation)


def suppressible_vertices(g: Graph, vc: VertexClass) -> list[int]:
    """Degree-2 vertices of S outside N[B]."""
    near_big = set(vc.big)
    for b in vc.big:
        near_big |= g.adj[b]
    return [v for v in range(g.n) if g.degree(v) == 2 and v in vc.small and v not in near_big]


def build_g_prime(pg: PlaneGraph, vc: Optional[VertexClass] = None) -> MultiGraph:
    g = pg.graph
    if vc is None:
        vc = classify_vertices(g)
    mg = multigraph_from_plane(pg)
    sup = suppressible_vertices(g, vc)
    sup_set = set(sup)
    for y in sup:
        for w in g.adj[y]:
            if w in sup_set:
                raise AdjacentSuppressible(f"suppressible vertices {y} and {w} are adjacent", edge=(min(y, w), max(y, w)))
    next_id = max(mg.edges, default=-1) + 1

    for y in sup:
        h1, h2 = mg.rotation[y]
        e1, e2 = mg.edges[h1[0]], mg.edges[h2[0]]
        # orient both paths so they run through y
        p1 = e1.path if h1[1] == 1 else e1.path[::-1]
        p2 = e2.path if h2[1] == 0 else e2.path[::-1]
        a = e1.ends[1 - h1[1]]
        b = e2.ends[1 - h2[1]]
        new = MEdge(next_id, [a, b], p1 + p2[1:])
        ra, rb = mg.rotation[a], mg.rotation[b]
        ra[ra.index((e1.id, 1 - h1[1]))] = (next_id, 0)
        rb[rb.index((e2.id, 1 - h2[1]))] = (next_id, 1)
        del mg.edges[e1.id], mg.edges[e2.id]
        mg.edges[next_id] = new
        del mg.rotation[y]
        mg.vertices.discard(y)
        mg.suppressed.add(y)
        next_id += 1

    s1 = sorted(vc.s.get(1, frozenset()))
    for x in s1:
        b = next(w for w in g.adj[x] if w in vc.big)
        # the x-b edge of G is still a plain edge: suppressed vertices avoid N[B]
        hx = next(h for h in mg.rotation[x] if mg.vertex_of((h[0], 1 - h[1])) == b and mg.edges[h[0]].path in ((x, b), (b, x)))
        eid = hx[0]
        hb = (eid, 1 - hx[1])
        rx = mg.rotation[x]
        i = rx.index(hx)
        moved = rx[i + 1:] + rx[:i]
        rb = mg.rotation[b]
        j = rb.index(hb)
        mg.rotation[b] = rb[:j] + moved + rb[j + 1:]
        for h in moved:
            e = mg.edges[h[0]]
            if h[1] == 0:
                e.path = (b,) + e.path
            else:
                e.path = e.path + (b,)
            e.ends[h[1]] = b
        del mg.edges[eid]
        del mg.rotation[x]
        mg.vertices.discard(x)
        mg.contracted.append((b, x))
        mg.absorbed[x] = b
    return mg


def build_g_double_prime(gp: MultiGraph) -> MultiGraph:
    out = gp.copy()
    for eid in out.loops():
        out._remove_edge(eid)
    return out


@dataclass
class TriplePrimeResult:
    graph: MultiGraph
    deleted: list[int]
    initial_two_faces: int


def build_g_triple_prime(gpp: MultiGraph) -> TriplePrimeResult:
    """Delete one edge of some 2-face until none is left (keeping lower ids)."""
    out = gpp.copy()
    deleted = []
    faces = out.two_faces()
    initial = len(faces)
    while faces:
        f = min(faces, key=lambda fc: sorted(h[0] for h in fc))
        victim = max(h[0] for h in f)
        out._remove_edge(victim)
        deleted.append(victim)
        after = out.two_faces()
        if len(after) >= len(faces):
            raise AssertionError("deleting a 2-face edge did not reduce the number of 2-faces")
        faces = after
    if len(deleted) > initial:
        raise AssertionError("more deletions than 2-faces")
    return TriplePrimeResult(out, deleted, initial)


# ---------------------------------------------------------------- edge types

@dataclass(frozen=True)
class EdgeType:
    type: int
    anchors: dict = field(default_factory=dict, hash=False, compare=False)


def _type_candidates(path: tuple[int, ...], g: Graph, vc: VertexClass) -> list[tuple[int, dict]]:
    big = vc.big
    s1 = vc.s.get(1, frozenset())

    def small(v):
        return v in vc.small

    def deg2(v):
        return g.degree(v) == 2

    hits: dict[int, dict] = {}
    k = len(path) - 1
    for p in (path, path[::-1]):
        v, w = p[0], p[-1]
        if k == 1:
            hits.setdefault(1, {})
        elif k == 2:
            x = p[1]
            if small(v) and w in big and x in s1:
                hits.setdefault(2, {"x": x})
            if small(v) and small(w) and deg2(x):
                hits.setdefault(4, {"y": x})
        elif k == 3:
            a, b = p[1], p[2]
            if small(v) and w in big and deg2(a) and b in s1:
                hits.setdefault(3, {"y": a, "x": b})
            if v in big and w in big and a in s1 and b in s1:
                hits.setdefault(5, {"x": a, "x'": b})
        elif k == 4:
            a, b, c = p[1], p[2], p[3]
            if v in big and w in big and a in s1 and c in s1 and deg2(b) and v != w:
                hits.setdefault(6, {"x": a, "y": b, "x'": c})
    return sorted(hits.items())


def classify_edge_types(gp: MultiGraph, g: Graph, vc: VertexClass) -> dict[int, EdgeType]:
    out = {}
    for eid, e in sorted(gp.edges.items()):
        cands = _type_candidates(e.path, g, vc)
        if len(cands) != 1:
            raise UnclassifiableEdge(
                f"edge {eid} with path {e.path} matches {len(cands)} types", edge_id=eid, path=e.path
            )
        t, anchors = cands[0]
        if e.is_loop and t != 5:
            raise UnclassifiableEdge(f"loop {eid} has type {t}", edge_id=eid, path=e.path)
        out[eid] = EdgeType(t, anchors)
    return out


def provenance_round_trip(gp: MultiGraph, g: Graph) -> bool:
    """Path edges outside the contracted set occur once each, and with it give E(G)."""
    contracted = {frozenset(e) for e in gp.contracted}
    seen: list[frozenset] = []
    for e in gp.edges.values():
        p = e.path
        for a, b in zip(p, p[1:]):
            pair = frozenset((a, b))
            if pair not in contracted:
                seen.append(pair)
    if len(seen) != len(set(seen)):
        return False
    if set(seen) & contracted:
        return False
    return set(seen) | contracted == {frozenset(e) for e in g.edges()}


# ---------------------------------------------------------------- regions

@dataclass
class Region:
    b1: int
    b2: int
    faces: list[list[HalfEdge]]
    edges: list[int]
    loops: list[int]
    vertices: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]
    D: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.faces)

    def subgraph(self, g: Graph) -> tuple[Graph, list[int]]:
        return g.induced(self.vertices | {self.b1, self.b2})


def _order_run(faces: list[list[HalfEdge]], members: list[int]) -> list[int]:
    """Order 2-faces of one component so consecutive ones share an edge."""
    by_edge: dict[int, list[int]] = {}
    for i in members:
        for h in faces[i]:
            by_edge.setdefault(h[0], []).append(i)
    nbrs = {i: set() for i in members}
    for fs in by_edge.values():
        for a in fs:
            for b in fs:
                if a != b:
                    nbrs[a].add(b)
    start = next((i for i in members if len(nbrs[i]) <= 1), min(members))
    order = [start]
    seen = {start}
    while True:
        nxt = sorted(nbrs[order[-1]] - seen)
        if not nxt:
            break
        order.append(nxt[0])
        seen.add(nxt[0])
    return order


def _corner_loops(gp: MultiGraph, face: list[HalfEdge], gpp: MultiGraph) -> set[int]:
    """Loops of G' sitting in the corners of a G'' face."""
    out = set()
    for i, h_out in enumerate(face):
        h_in = face[i - 1]
        twin = (h_in[0], 1 - h_in[1])
        v = gpp.vertex_of(twin)
        rot = gp.rotation[v]
        j = rot.index(twin)
        while True:
            j = (j + 1) % len(rot)
            h = rot[j]
            if h == h_out or h == twin:
                break
            if gp.edges[h[0]].is_loop:
                out.add(h[0])
    return out


def find_regions(gpp: MultiGraph, vc: VertexClass, gp: Optional[MultiGraph] = None) -> list[Region]:
    """Maximal runs of consecutive 2-faces of G'' between two distinct big vertices.

    Passing ``gp`` (the G' the input came from) lets regions pick up the
    loops that were removed from inside their faces.
    """
    faces = gpp.two_faces()
    keep = []
    for i, f in enumerate(faces):
        ends = {gpp.vertex_of(h) for h in f}
        if len(ends) == 2 and ends <= vc.big:
            keep.append(i)
    # union faces sharing an edge
    parent = {i: i for i in keep}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i in keep:
        for h in faces[i]:
            if h[0] in owner:
                parent[find(i)] = find(owner[h[0]])
            else:
                owner[h[0]] = i
    groups: dict[int, list[int]] = {}
    for i in keep:
        groups.setdefault(find(i), []).append(i)

    regions = []
    for members in groups.values():
        order = _order_run(faces, sorted(members))
        fl = [faces[i] for i in order]
        eids = sorted({h[0] for f in fl for h in f})
        b1, b2 = sorted({gpp.vertex_of(h) for h in fl[0]})
        loops: set[int] = set()
        if gp is not None:
            for f in fl:
                loops |= _corner_loops(gp, f, gpp)
        src = gp if gp is not None else gpp
        inner: set[int] = set()
        for eid in list(eids) + sorted(loops):
            inner |= set(src.edges[eid].path[1:-1])
        inner -= {b1, b2}
        part1 = frozenset(x for x in inner if src.absorbed.get(x) == b1)
        part2 = frozenset(x for x in inner if src.absorbed.get(x) == b2)
        dset = frozenset(x for x in inner if x in src.suppressed)
        regions.append(Region(b1, b2, fl, eids, sorted(loops), frozenset(inner), part1, part2, dset))
    regions.sort(key=lambda r: (r.b1, r.b2, r.edges))
    return regions


def check_region_decomposition(region: Region, g: Graph) -> list[str]:
    """Problems with the B1/B2/D split; an empty list means it is sound."""
    issues = []
    parts = (region.B1, region.B2, region.D)
    if sum(len(p) for p in parts) != len(region.vertices) or frozenset().union(*parts) != region.vertices:
        issues.append("B1, B2, D do not partition V(R)")
    if not region.B1 <= g.adj[region.b1]:
        issues.append("B1 not inside N(b1)")
    if not region.B2 <= g.adj[region.b2]:
        issues.append("B2 not inside N(b2)")
    for y in region.D:
        if g.degree(y) != 2:
            issues.append(f"{y} in D has degree {g.degree(y)}")
        if g.adj[y] & region.D:
            issues.append(f"D is not independent at {y}")
        if not (g.adj[y] & region.B1 and g.adj[y] & region.B2):
            issues.append(f"{y} in D lacks a neighbor in B1 or B2")
    return issues


def fewedges_diagnostic(region: Region, g: Graph) -> list[tuple[int, int, int, int]]:
    """Vertices of B1 or B2 with too many neighbors: (w, in B1, in B2, in D)."""
    out = []
    for w in sorted(region.B1 | region.B2):
        c1 = len(g.adj[w] & region.B1)
        c2 = len(g.adj[w] & region.B2)
        cd = len(g.adj[w] & region.D)
        if c1 > 1 or c2 > 1 or cd > 8:
            out.append((w, c1, c2, cd))
    return out


# ---------------------------------------------------------------- diagnostics

@dataclass
class HalfEdgeReport:
    degree_violations: list[tuple[int, int, int]]  # (v, deg G', deg G'')
    loop_adjacency_violations: list[int]  # loop ids

    @property
    def ok(self) -> bool:
        return not self.degree_violations and not self.loop_adjacency_violations

    def ratio(self, v: int, gp: MultiGraph) -> Fraction | None:
        plain = sum(1 for h in gp.rotation[v] if not gp.edges[h[0]].is_loop)
        return Fraction(gp.degree(v), plain) if plain else None


def half_edge_diagnostics(gp: MultiGraph) -> HalfEdgeReport:
    deg_viol = []
    for v in sorted(gp.vertices):
        d1 = gp.degree(v)
        d2 = sum(1 for h in gp.rotation[v] if not gp.edges[h[0]].is_loop)
        if 5 * d2 < d1:
            deg_viol.append((v, d1, d2))
    loop_viol = []
    for eid in gp.loops():
        v = gp.edges[eid].ends[0]
        rot = gp.rotation[v]
        ok = False
        for end in (0, 1):
            i = rot.index((eid, end))
            for nb in (rot[i - 1], rot[(i + 1) % len(rot)]):
                if not gp.edges[nb[0]].is_loop:
                    ok = True
        if not ok:
            loop_viol.append(eid)
    return HalfEdgeReport(deg_viol, loop_viol)


def digon_runs(gpp: MultiGraph) -> list[tuple[int, int, int]]:
    """(u, v, length) for each maximal run of consecutive 2-faces."""
    faces = gpp.two_faces()
    idx = list(range(len(faces)))
    parent = {i: i for i in idx}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i in idx:
        for h in faces[i]:
            if h[0] in owner:
                parent[find(i)] = find(owner[h[0]])
            else:
                owner[h[0]] = i
    groups: dict[int, int] = {}
    for i in idx:
        groups[find(i)] = groups.get(find(i), 0) + 1
    out = []
    for root, size in groups.items():
        u, v = sorted({gpp.vertex_of(h) for h in faces[root]})
        out.append((u, v, size))
    return sorted(out)


def smallfaces_diagnostic(gpp: MultiGraph, vc: VertexClass, limit: int = 8) -> list[tuple[int, int, int]]:
    """Runs of 2-faces between a big and a non-big vertex longer than ``limit``."""
    bad = []
    for u, v, size in digon_runs(gpp):
        if (u in vc.big) != (v in vc.big) and size > limit:
            bad.append((u, v, size))
    return bad


def type3_blocks(gpp: MultiGraph, types: dict[int, EdgeType], vc: VertexClass) -> list[tuple[int, int, int]]:
    """Longest chains of type-3 edges joined by 2-faces, per big/small pair."""
    faces = gpp.two_faces()
    links: dict[int, set[int]] = {}
    for f in faces:
        a, b = f[0][0], f[1][0]
        if types.get(a, EdgeType(0)).type == 3 and types.get(b, EdgeType(0)).type == 3:
            links.setdefault(a, set()).add(b)
            links.setdefault(b, set()).add(a)
    seen: set[int] = set()
    out = []
    for s in sorted(links):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            e = stack.pop()
            comp.append(e)
            for w in links[e]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        u, v = sorted(gpp.edges[s].ends)
        out.append((u, v, len(comp)))
    return sorted(out)


def first_red_diagnostic(g: Graph, vc: VertexClass) -> list[tuple[int, int]]:
    near = set(vc.big)
    for b in vc.big:
        near |= g.adj[b]
    bad = []
    for u, v in g.edges():
        if u not in near and v not in near:
            bad.append((u, v))
        elif g.degree(u) == 2 and g.degree(v) == 2 and not (u in near and v in near):
            bad.append((u, v))
    return bad


def notriangle_diagnostic(g: Graph) -> list[tuple[int, int, int]]:
    bad = []
    for u, v in g.edges():
        if g.degree(u) == 2 and g.degree(v) == 2:
            for x in sorted(g.adj[u] & g.adj[v]):
                bad.append((u, v, x))
    return bad


def config_pp_diagnostic(g: Graph, vc: VertexClass) -> list[tuple[int, int, int, int]]:
    """Triangles v x1 x2 with a small w as in the forbidden pattern and d(x1) <= 3."""
    bad = []
    twos = [y for y in range(g.n) if g.degree(y) == 2]

    def common_two(a, b):
        return [y for y in twos if a in g.adj[y] and b in g.adj[y]]

    for v in range(g.n):
        for x1 in g.adj[v]:
            if g.degree(x1) > 3:
                continue
            for x2 in g.adj[v] & g.adj[x1]:
                for y1 in g.adj[x1]:
                    if g.degree(y1) != 2:
                        continue
                    for w in g.adj[y1]:
                        if w in (v, x1, x2) or w not in vc.small:
                            continue
                        if g.degree(x2) == 2 or (g.degree(x2) == 3 and common_two(w, x2)):
                            bad.append((v, x1, x2, w))
    return sorted(set(bad))


# ---------------------------------------------------------------- fixtures

def region_fixture(paths: int = 5) -> tuple[PlaneGraph, int]:
    """Two big hubs joined by ``paths`` routes hub-x-y-x'-hub plus one separating vertex.

    Returns the plane graph and the big threshold to use.
    """
    from .plane import rotation_from_coords

    coords = [(0.0, 0.0), (10.0, 0.0)]
    edges = []
    for i in range(1, paths + 1):
        base = len(coords)
        coords += [(2.0, 2.0 * i), (5.0, 2.0 * i), (8.0, 2.0 * i)]
        x, y, x2 = base, base + 1, base + 2
        edges += [(0, x), (x, y), (y, x2), (x2, 1)]
    z = len(coords)
    coords.append((5.0, -3.0))
    edges += [(0, z), (z, 1)]
    return rotation_from_coords(coords, edges), paths + 1


def smallfacesaux_fixture() -> tuple[PlaneGraph, int]:
    """Big v, small w and five paths v-x_i-y_i-w, plus a triangle on v, a v-x8-w path and a pendant on w.

    Vertex ids: v=0, w=1, x_i=2i, y_i=2i+1 (i=1..5), x6=12, x7=13, x8=14, x9=15.
    """
    from .plane import rotation_from_coords

    coords = [(0.0, 0.0), (10.0, 0.0)]
    edges = []
    for i in range(1, 6):
        coords += [(3.0, 2.0 * i), (7.0, 2.0 * i)]
        x, y = 2 * i, 2 * i + 1
        edges += [(0, x), (x, y), (y, 1)]
    coords += [(-2.0, 1.0), (-2.0, -1.0), (5.0, -3.0), (12.0, 0.0)]
    edges += [(0, 12), (0, 13), (12, 13), (0, 14), (14, 1), (1, 15)]
    return rotation_from_coords(coords, edges), 8


def loop_heavy_fixture() -> tuple[PlaneGraph, int]:
    """Hub b with four pendant triangles and an edge to a second big hub with one triangle."""
    from .plane import rotation_from_coords
    import math

    coords = [(0.0, 0.0)]
    edges = []
    for i in range(4):
        a0 = math.pi / 2 + i * math.pi / 2 - 0.3
        a1 = a0 + 0.6
        base = len(coords)
        coords += [(2 * math.cos(a0), 2 * math.sin(a0)), (2 * math.cos(a1), 2 * math.sin(a1))]
        edges += [(0, base), (0, base + 1), (base, base + 1)]
    # rotate the four triangles so the edge to c leaves through a free angle
    c = len(coords)
    coords.append((6.0, 0.5))
    edges.append((0, c))
    d, e = c + 1, c + 2
    coords += [(8.0, 1.5), (8.0, -0.5)]
    edges += [(c, d), (c, e), (d, e)]
    return rotation_from_coords(coords, edges), 3
