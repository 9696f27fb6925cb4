"""Text formats: edge lists, rotation systems, list/correspondence assignments, multigraphs."""

from __future__ import annotations

from typing import Iterator, Union

from .errors import FormatError, InvalidRotation
from .exact import CorrespondenceAssignment
from .graph import Graph
from .kernels import Digraph
from .plane import PlaneGraph, euler_check_components
from .reduction import MultiGraph


def _lines(text: str) -> Iterator[tuple[int, str]]:
    """Non-blank lines with comments stripped, numbered from 1."""
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield i, line


def _int(tok: str, line: int, line_text: str, what: str) -> int:
    col = line_text.find(tok) + 1
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected integer {what}, got {tok!r}", line=line, column=col) from None


def _header(it, expect: int) -> tuple[int, str, list[int]]:
    try:
        ln, text = next(it)
    except StopIteration:
        raise FormatError("empty input", line=1, column=1) from None
    toks = text.split()
    if len(toks) != expect:
        raise FormatError(f"header needs {expect} integer(s)", line=ln, column=1)
    return ln, text, [_int(t, ln, text, "in header") for t in toks]


# ---------------------------------------------------------------- edge lists

def parse_edge_pairs(text: str, directed: bool = False) -> tuple[int, list[tuple[int, int]]]:
    it = _lines(text)
    ln, _, (n, m) = _header(it, 2)
    if n < 0 or m < 0:
        raise FormatError("negative count in header", line=ln, column=1)
    pairs = []
    seen = set()
    for ln, text in it:
        toks = text.split()
        if len(toks) != 2:
            raise FormatError("edge line needs two vertices", line=ln, column=1)
        u, v = (_int(t, ln, text, "vertex") for t in toks)
        for x in (u, v):
            if not 0 <= x < n:
                raise FormatError(f"vertex {x} out of range 0..{n - 1}", line=ln, column=text.find(str(x)) + 1)
        if u == v:
            raise FormatError(f"self-loop at {u}", line=ln, column=1)
        if not directed and u > v:
            raise FormatError(f"edge {u} {v} must be written with u < v", line=ln, column=1)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {u} {v}", line=ln, column=1)
        seen.add(key)
        pairs.append((u, v))
    if len(pairs) != m:
        raise FormatError(f"header promises {m} edges, found {len(pairs)}", line=ln, column=1)
    return n, pairs


def parse_graph(text: str) -> Graph:
    n, pairs = parse_edge_pairs(text)
    return Graph(n, pairs)


def parse_digraph(text: str) -> Digraph:
    n, pairs = parse_edge_pairs(text, directed=True)
    return Digraph(n, pairs)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def format_digraph(d: Digraph) -> str:
    arcs = sorted(d.arcs)
    return "\n".join([f"{d.n} {len(arcs)}"] + [f"{u} {v}" for u, v in arcs]) + "\n"


# ---------------------------------------------------------------- rotation systems

def parse_plane(text: str, check_euler: bool = True) -> PlaneGraph:
    it = _lines(text)
    hl, _, (n,) = _header(it, 1)
    rotation: list[list[int] | None] = [None] * n
    where: dict[int, int] = {}
    for ln, text in it:
        head, sep, tail = text.partition(":")
        if not sep:
            raise FormatError("rotation line needs 'v: w1 w2 ...'", line=ln, column=1)
        v = _int(head.strip(), ln, text, "vertex")
        if not 0 <= v < n:
            raise FormatError(f"vertex {v} out of range", line=ln, column=1)
        if rotation[v] is not None:
            raise FormatError(f"rotation of {v} given twice", line=ln, column=1)
        off = len(head) + 1
        nbrs = []
        for tok in tail.split():
            col = off + tail.find(tok) + 1
            w = _int(tok, ln, text, "neighbor")
            if not 0 <= w < n or w == v:
                raise FormatError(f"bad neighbor {w} of {v}", line=ln, column=col)
            if w in nbrs:
                raise FormatError(f"neighbor {w} repeated around {v}", line=ln, column=col)
            nbrs.append(w)
        rotation[v] = nbrs
        where[v] = ln
    for v in range(n):
        if rotation[v] is None:
            raise FormatError(f"missing rotation for vertex {v}", line=hl, column=1)
    for v in range(n):
        for w in rotation[v]:
            if v not in rotation[w]:
                raise FormatError(f"half-edge {v}->{w} has no partner {w}->{v}", line=where[v], column=1)
    try:
        pg = PlaneGraph.from_rotation([tuple(r) for r in rotation])
    except InvalidRotation as exc:
        raise FormatError(str(exc), line=hl, column=1) from None
    if check_euler and not euler_check_components(pg):
        raise FormatError("rotation system violates Euler's formula (not planar)", line=hl, column=1)
    return pg


def format_plane(pg: PlaneGraph) -> str:
    lines = [str(pg.graph.n)]
    for v in range(pg.graph.n):
        lines.append(f"{v}: " + " ".join(map(str, pg.rotation[v])) if pg.rotation[v] else f"{v}:")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- assignments

Assignment = Union[list[list[int]], CorrespondenceAssignment]


def parse_assignment(text: str, g: Graph | None = None) -> tuple[str, Assignment]:
    """Parse a ``lists n`` or ``corr n`` file.

    In correspondence mode a list line ``v : k`` sets f(v) = k; writing the
    full run ``v : 1 2 .. k`` is accepted too.
    """
    it = _lines(text)
    try:
        hl, htext = next(it)
    except StopIteration:
        raise FormatError("empty input", line=1, column=1) from None
    toks = htext.split()
    if len(toks) != 2 or toks[0] not in ("lists", "corr"):
        raise FormatError("header must be 'lists n' or 'corr n'", line=hl, column=1)
    mode = toks[0]
    n = _int(toks[1], hl, htext, "vertex count")
    if g is not None and g.n != n:
        raise FormatError(f"assignment has {n} vertices, graph has {g.n}", line=hl, column=1)
    lists: list[list[int] | None] = [None] * n
    matchings: dict[tuple[int, int], set[tuple[int, int]]] = {}
    pending = []
    for ln, text in it:
        head, sep, tail = text.partition(":")
        if not sep:
            raise FormatError("expected ':'", line=ln, column=1)
        hv = head.split()
        off = len(head) + 1
        if len(hv) == 1:
            v = _int(hv[0], ln, text, "vertex")
            if not 0 <= v < n:
                raise FormatError(f"vertex {v} out of range", line=ln, column=1)
            if lists[v] is not None:
                raise FormatError(f"list of {v} given twice", line=ln, column=1)
            cols = []
            for tok in tail.split():
                c = _int(tok, ln, text, "color")
                if c < 1:
                    raise FormatError(f"color {c} must be positive", line=ln, column=off + tail.find(tok) + 1)
                cols.append(c)
            lists[v] = cols
        elif len(hv) == 2:
            if mode != "corr":
                raise FormatError("matching lines only allowed in corr mode", line=ln, column=1)
            u, v = (_int(t, ln, text, "vertex") for t in hv)
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise FormatError(f"bad edge {u} {v}", line=ln, column=1)
            if g is not None and not g.has_edge(u, v):
                raise FormatError(f"matching on non-edge {u} {v}", line=ln, column=1)
            pairs = []
            for tok in tail.split():
                col = off + tail.find(tok) + 1
                a, dash, b = tok.partition("-")
                if not dash:
                    raise FormatError(f"matching pair {tok!r} must look like a-b", line=ln, column=col)
                pairs.append((_int(a, ln, text, "color"), _int(b, ln, text, "color"), col))
            pending.append((ln, u, v, pairs))
        else:
            raise FormatError("left of ':' must be a vertex or an edge", line=ln, column=1)
    for v in range(n):
        if lists[v] is None:
            raise FormatError(f"missing list for vertex {v}", line=hl, column=1)
    if mode == "lists":
        return mode, [list(x) for x in lists]
    f = []
    for v, cols in enumerate(lists):
        if len(cols) == 1:
            f.append(cols[0])
        elif cols == list(range(1, len(cols) + 1)):
            f.append(len(cols))
        else:
            raise FormatError(f"corr capacity line for {v} must be 'v : k' or 'v : 1 .. k'", line=hl, column=1)
    for ln, u, v, pairs in pending:
        key = (min(u, v), max(u, v))
        bucket = matchings.setdefault(key, set())
        for a, b, col in pairs:
            if u > v:
                a, b = b, a
            lo, hi = key
            if not 1 <= a <= f[lo]:
                raise FormatError(f"color {a} exceeds f({lo}) = {f[lo]}", line=ln, column=col)
            if not 1 <= b <= f[hi]:
                raise FormatError(f"color {b} exceeds f({hi}) = {f[hi]}", line=ln, column=col)
            if any(x == a or y == b for x, y in bucket):
                raise FormatError(f"matching on {u} {v} is not injective at {a}-{b}", line=ln, column=col)
            bucket.add((a, b))
    return mode, CorrespondenceAssignment(f, matchings)


def format_lists(lists) -> str:
    out = [f"lists {len(lists)}"]
    out += [f"{v} : " + " ".join(map(str, sorted(L))) for v, L in enumerate(lists)]
    return "\n".join(out) + "\n"


def format_corr(C: CorrespondenceAssignment) -> str:
    out = [f"corr {len(C.f)}"]
    out += [f"{v} : {k}" for v, k in enumerate(C.f)]
    for (u, v), pairs in sorted(C.matchings.items()):
        if pairs:
            out.append(f"{u} {v} : " + " ".join(f"{a}-{b}" for a, b in sorted(pairs)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- multigraphs

def format_multigraph(mg: MultiGraph, title: str = "multigraph") -> str:
    """Vertices, edges with ids and provenance, then rotations as id.end half-edges."""
    out = [f"# {title}", f"{title} {len(mg.vertices)} {len(mg.edges)}"]
    out.append("vertices " + " ".join(map(str, sorted(mg.vertices))))
    for eid, e in sorted(mg.edges.items()):
        tag = " loop" if e.is_loop else ""
        out.append(f"e {eid} {e.ends[0]} {e.ends[1]}  # path {'-'.join(map(str, e.path))}{tag}")
    for v in sorted(mg.vertices):
        out.append(f"r {v}: " + " ".join(f"{i}.{end}" for i, end in mg.rotation[v]))
    return "\n".join(out) + "\n"
