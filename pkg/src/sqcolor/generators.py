"""Named constructions and random corpus generators."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Union

from .errors import BadParity, NotPrime
from .graph import Graph, forbidden_cycles
from .plane import PlaneGraph, rotation_from_coords

MAX_PG_ORDER = 7


# ---------------------------------------------------------------- Wegner

def _three_hub_sizes(k: int) -> tuple[int, int, int]:
    """Middle-set sizes on {v1,v2}, {v1,v3}, {v2,v3} giving outer degrees <= k."""
    if k < 2:
        raise ValueError("wegner family needs k >= 2")
    return (k - 1) // 2, k // 2, k // 2 - 1


def _three_hub_plane(a: int, b: int, c: int) -> PlaneGraph:
    # v1, v2, v3 sit on a triangle; middles are chevrons on the outward
    # bisector of their side, at increasing heights so none cross.
    corners = [(0.0, 0.0), (10.0, 0.0), (5.0, 10.0 * math.sqrt(3) / 2)]
    cx = sum(p[0] for p in corners) / 3
    cy = sum(p[1] for p in corners) / 3
    coords = list(corners)
    edges = [(0, 1), (1, 2)]
    for (i, j), count in (((0, 1), a), ((0, 2), b), ((1, 2), c)):
        mx = (corners[i][0] + corners[j][0]) / 2
        my = (corners[i][1] + corners[j][1]) / 2
        dx, dy = mx - cx, my - cy
        norm = math.hypot(dx, dy)
        for h in range(1, count + 1):
            v = len(coords)
            coords.append((mx + dx / norm * h, my + dy / norm * h))
            edges += [(i, v), (j, v)]
    return rotation_from_coords(coords, edges)


def wegner_figure() -> PlaneGraph:
    """The drawn instance: 5, 5 and 4 middles, 17 vertices, v1 v2 v3 = 0 1 2."""
    return _three_hub_plane(5, 5, 4)


def wegner_family(k: int, sizes: tuple[int, int, int] | None = None) -> PlaneGraph:
    """Planar graph of maximum degree k whose square is a clique on floor(3k/2)+1 vertices.

    ``sizes`` overrides the middle-set sizes on {v1,v2}, {v1,v3}, {v2,v3}.
    """
    a, b, c = sizes if sizes is not None else _three_hub_sizes(k)
    if min(a, b, c) < 0:
        raise ValueError("middle-set sizes must be nonnegative")
    return _three_hub_plane(a, b, c)


def wegner_labels(pg: PlaneGraph) -> dict[int, str]:
    labels = {0: "v1", 1: "v2", 2: "v3"}
    for v in range(3, pg.graph.n):
        pair = "".join(str(h + 1) for h in sorted(pg.graph.adj[v]))
        labels[v] = f"m{pair}_{v}"
    return labels


# ---------------------------------------------------------------- gadget

def gadget(k: int, t: int) -> Graph:
    """k-cycle with every edge blown up into K_{2,t}.

    Hubs are 0..k-1; the j-th middle between hubs i and i+1 is k + i*t + j.
    """
    if k % 2 == 0:
        raise BadParity(f"gadget needs odd k, got {k}")
    if k < 3 or t < 1:
        raise ValueError("gadget needs k >= 3 and t >= 1")
    edges = []
    for i in range(k):
        for j in range(t):
            m = k + i * t + j
            edges += [(i, m), ((i + 1) % k, m)]
    return Graph(k + k * t, edges)


def gadget_plane(k: int, t: int) -> PlaneGraph:
    """Planar drawing of :func:`gadget` (hubs on a circle, nested chevrons)."""
    g = gadget(k, t)
    coords = []
    for i in range(k):
        ang = 2 * math.pi * i / k
        coords.append((10 * math.cos(ang), 10 * math.sin(ang)))
    for i in range(k):
        a, b = coords[i], coords[(i + 1) % k]
        mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        norm = math.hypot(mx, my)
        for j in range(t):
            s = 0.3 + 0.5 * j
            coords.append((mx * (1 + s / norm), my * (1 + s / norm)))
    return rotation_from_coords(coords, g.edges())


# ---------------------------------------------------------------- projective planes

def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, math.isqrt(q) + 1))


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalized homogeneous triples over GF(q): first nonzero coordinate is 1."""
    pts = []
    for x in itertools.product(range(q), repeat=3):
        nz = next((c for c in x if c), 0)
        if nz == 1:
            pts.append(x)
    return pts


def incidence_pg(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q); points first, then lines."""
    if not _is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if q > MAX_PG_ORDER:
        raise ValueError(f"q={q} above desk-scale limit {MAX_PG_ORDER}")
    pts = projective_points(q)
    n = len(pts)
    edges = []
    for i, p in enumerate(pts):
        for j, line in enumerate(pts):
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0:
                edges.append((i, n + j))
    return Graph(2 * n, edges)


# ---------------------------------------------------------------- small fixtures

def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def cycle_plane(n: int) -> PlaneGraph:
    return PlaneGraph.from_rotation([((i - 1) % n, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """K_{1,n}: center 0, leaves 1..n."""
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def star_plane(n: int) -> PlaneGraph:
    return PlaneGraph.from_rotation([tuple(range(1, n + 1))] + [(0,)] * n)


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def cube_plane() -> PlaneGraph:
    # outer square 0 1 3 2, inner square 4 5 7 6; edges join ids differing in one bit
    coords = [(0, 0), (4, 0), (0, 4), (4, 4), (1, 1), (3, 1), (1, 3), (3, 3)]
    edges = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return rotation_from_coords(coords, edges)


def icosahedron_plane() -> PlaneGraph:
    up = [1 + i for i in range(5)]
    lo = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [
            (0, up[i], up[j]),
            (up[i], lo[i], up[j]),
            (up[j], lo[i], lo[j]),
            (11, lo[j], lo[i]),
        ]
    return PlaneGraph.from_faces(12, faces)


def dual(pg: PlaneGraph) -> PlaneGraph:
    """Dual of a simple plane graph whose dual is also simple."""
    faces = [[pg.face_of_dart[(v, w)] for w in pg.rotation[v]] for v in range(pg.graph.n)]
    try:
        return PlaneGraph.from_faces(len(pg.faces), faces)
    except Exception:
        return PlaneGraph.from_faces(len(pg.faces), [f[::-1] for f in faces])


def dodecahedron_plane() -> PlaneGraph:
    return dual(icosahedron_plane())


def k3_plane() -> PlaneGraph:
    return PlaneGraph.from_rotation([(1, 2), (2, 0), (0, 1)])


def canonical_form(g: Graph) -> tuple[int, ...]:
    """Lexicographically least sorted edge list over all relabelings (n <= 8)."""
    best = None
    for perm in itertools.permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges()))
        if best is None or key < best:
            best = key
    return (g.n,) + tuple(x for e in best for x in e)


def connected_graph_catalog(max_n: int) -> list[Graph]:
    """All connected graphs on 1..max_n vertices up to isomorphism."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for mask in range(1 << len(pairs)):
            g = Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            if g.m < n - 1 or not g.is_connected():
                continue
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


# ---------------------------------------------------------------- random plane C4-free

def _stacked_triangulation(n: int, rng: random.Random) -> list[list[int]]:
    rot = [[1, 2], [2, 0], [0, 1]]
    faces = [(0, 1, 2), (0, 2, 1)]
    for x in range(3, n):
        idx = rng.randrange(len(faces))
        a, b, c = faces[idx]
        # face walk a->b->c: next after a in rot(b) is c, etc.
        for v, before in ((b, a), (c, b), (a, c)):
            rv = rot[v]
            rv.insert(rv.index(before) + 1, x)
        rot.append([a, c, b])
        faces[idx] = (a, b, x)
        faces.append((b, c, x))
        faces.append((c, a, x))
    return rot


def _strip_and_relabel(rot: list[list[int]], alive: list[bool]) -> list[tuple[int, ...]]:
    changed = True
    while changed:
        changed = False
        for v, r in enumerate(rot):
            if alive[v] and len(r) <= 1:
                alive[v] = False
                for w in r:
                    rot[w].remove(v)
                r.clear()
                changed = True
    keep = [v for v in range(len(rot)) if alive[v]]
    index = {v: i for i, v in enumerate(keep)}
    return [tuple(index[w] for w in rot[v]) for v in keep]


def random_plane_c4free(n: int, seed: int, max_tries: int = 50) -> PlaneGraph:
    """Random connected C4-free plane graph with minimum degree >= 2.

    A stacked triangulation on ``n`` vertices is thinned by deleting one
    edge from every 4-cycle, then vertices of degree <= 1 are stripped.
    The result may have fewer than ``n`` vertices.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    for attempt in range(max_tries):
        rng = random.Random(seed if attempt == 0 else hash((seed, attempt)) & (2**63 - 1))
        rot = _stacked_triangulation(n, rng)
        g = Graph(n, ((v, w) for v in range(n) for w in rot[v] if v < w))
        cycles = forbidden_cycles(g, {4}, cap=4)
        rng.shuffle(cycles)
        deg = [len(r) for r in rot]
        present = {frozenset(e) for e in g.edges()}
        for cyc in cycles:
            cedges = [frozenset((cyc[i], cyc[(i + 1) % 4])) for i in range(4)]
            if not all(e in present for e in cedges):
                continue
            best = min(sum(deg[x] for x in e) for e in cedges)
            e = rng.choice([e for e in cedges if sum(deg[x] for x in e) == best])
            present.discard(e)
            u, v = tuple(e)
            rot[u].remove(v)
            rot[v].remove(u)
            deg[u] -= 1
            deg[v] -= 1
        final = _strip_and_relabel(rot, [True] * n)
        if len(final) >= 3:
            pg = PlaneGraph.from_rotation(final)
            if pg.graph.is_connected():
                return pg
    raise RuntimeError(f"no C4-free sample for n={n}, seed={seed}")


# ---------------------------------------------------------------- dispatch

@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)


KINDS = ("wegnerFigure", "wegnerFamily", "gadget", "incidencePG", "cycle", "path", "star", "petersen", "randomPlaneC4Free")


_REQUIRED = {
    "wegnerFamily": ("k",),
    "gadget": ("k", "t"),
    "incidencePG": ("q",),
    "cycle": ("n",),
    "path": ("n",),
    "star": ("n",),
    "randomPlaneC4Free": ("n", "seed"),
}


def generate(spec: GeneratorSpec) -> Union[Graph, PlaneGraph]:
    p = spec.params
    kind = spec.kind
    needed = _REQUIRED.get(kind, ())
    missing = [k for k in needed if k not in p]
    if missing:
        raise ValueError(f"{kind} needs parameter(s): {', '.join(missing)}")
    if kind == "wegnerFigure":
        return wegner_figure()
    if kind == "wegnerFamily":
        return wegner_family(p["k"])
    if kind == "gadget":
        return gadget_plane(p["k"], p["t"])
    if kind == "incidencePG":
        return incidence_pg(p["q"])
    if kind == "cycle":
        return cycle_plane(p["n"])
    if kind == "path":
        return path(p["n"])
    if kind == "star":
        return star_plane(p["n"])
    if kind == "petersen":
        return petersen()
    if kind == "randomPlaneC4Free":
        return random_plane_c4free(p["n"], p["seed"])
    raise ValueError(f"unknown generator kind {kind!r}")
