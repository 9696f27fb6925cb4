"""Charge redistribution over vertices, edges and faces, and reducible configurations.

Every vertex starts with d(v) - 4, every face with l(f) - 4 and every edge
with 0.  Six rules are applied in order; inside one rule all transfers are
computed from the charges at the start of that rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import PreconditionViolated
from .graph import Graph, forbidden_cycles
from .plane import PlaneGraph, euler_check

BIG_THRESHOLD = 10
SMALL_MIN = 5
STAGES = ("initial", "R1", "R2", "R3", "R4", "R5", "R6")

Key = tuple  # ('v', i) | ('e', (u, v)) | ('f', j)

HALF = Fraction(1, 2)
FIFTH = Fraction(1, 5)
TENTH = Fraction(1, 10)
THREE_FIFTHS = Fraction(3, 5)


@dataclass
class ChargeLedger:
    charges: dict[Key, Fraction]
    snapshots: dict[str, dict[Key, Fraction]] = field(default_factory=dict)
    transfers: dict[str, list[tuple[Key, Key, Fraction]]] = field(default_factory=dict)

    def total(self, stage: str | None = None) -> Fraction:
        src = self.charges if stage is None else self.snapshots[stage]
        return sum(src.values(), Fraction(0))

    def stage_totals(self) -> dict[str, Fraction]:
        return {s: self.total(s) for s in self.snapshots}

    def minimum(self) -> tuple[Key, Fraction]:
        key = min(self.charges, key=lambda k: (self.charges[k], k))
        return key, self.charges[key]

    def of(self, kind: str) -> dict[Key, Fraction]:
        return {k: c for k, c in self.charges.items() if k[0] == kind}


def _vkey(v: int) -> Key:
    return ("v", v)


def _ekey(u: int, v: int) -> Key:
    return ("e", (min(u, v), max(u, v)))


def _fkey(f: int) -> Key:
    return ("f", f)


def check_discharge_domain(pg: PlaneGraph) -> None:
    g = pg.graph
    if not g.is_connected():
        raise PreconditionViolated("graph is disconnected", witness=g.components()[1][:1])
    low = [v for v in range(g.n) if g.degree(v) < 2]
    if low:
        raise PreconditionViolated(f"vertex {low[0]} has degree {g.degree(low[0])}", witness=low[0])
    c4 = forbidden_cycles(g, {4}, cap=4)
    if c4:
        raise PreconditionViolated("graph contains a 4-cycle", witness=c4[0])
    if not euler_check(pg):
        raise PreconditionViolated("rotation system is not a plane embedding")


class _Stage:
    def __init__(self, ledger: ChargeLedger, name: str):
        self.ledger = ledger
        self.name = name
        self.entry = dict(ledger.charges)
        self.moves: list[tuple[Key, Key, Fraction]] = []

    def move(self, src: Key, dst: Key, amount: Fraction) -> None:
        if amount:
            self.moves.append((src, dst, amount))

    def commit(self) -> None:
        ch = self.ledger.charges
        for src, dst, amount in self.moves:
            ch[src] -= amount
            ch[dst] += amount
        self.ledger.snapshots[self.name] = dict(ch)
        self.ledger.transfers[self.name] = self.moves


def run_discharging(pg: PlaneGraph, beta: int = BIG_THRESHOLD, check: bool = True) -> ChargeLedger:
    if beta < SMALL_MIN:
        raise ValueError(f"big threshold must be at least {SMALL_MIN}")
    if check:
        check_discharge_domain(pg)
    g = pg.graph
    deg = [g.degree(v) for v in range(g.n)]
    big = [d >= beta for d in deg]
    small = [SMALL_MIN <= d < beta for d in deg]
    flen = [len(f) for f in pg.faces]
    tri_faces = [i for i, L in enumerate(flen) if L == 3]
    tri_verts = {i: pg.face_vertices(i) for i in tri_faces}
    lone_triangle = g.n == 3 and g.m == 3

    # triangle incidences; C4-freeness makes them unique
    edge_tri: dict[tuple[int, int], list[int]] = {}
    vert_tri: dict[int, list[int]] = {}
    for i in tri_faces:
        vs = tri_verts[i]
        for j in range(3):
            a, b = vs[j], vs[(j + 1) % 3]
            edge_tri.setdefault((min(a, b), max(a, b)), []).append(i)
            vert_tri.setdefault(vs[j], []).append(i)
    if not lone_triangle:
        for e, fs in edge_tri.items():
            if len(fs) > 1:
                raise PreconditionViolated(f"edge {e} lies on two 3-faces", witness=e)

    charges: dict[Key, Fraction] = {}
    for v in range(g.n):
        charges[_vkey(v)] = Fraction(deg[v] - 4)
    for u, v in g.edges():
        charges[_ekey(u, v)] = Fraction(0)
    for i, L in enumerate(flen):
        charges[_fkey(i)] = Fraction(L - 4)
    ledger = ChargeLedger(charges)
    ledger.snapshots["initial"] = dict(charges)
    ledger.transfers["initial"] = []

    # R1
    st = _Stage(ledger, "R1")
    for u, v in g.edges():
        e = _ekey(u, v)
        for dart in ((u, v), (v, u)):
            f = pg.face_of_dart[dart]
            if flen[f] >= 5:
                st.move(_fkey(f), e, FIFTH)
        for x in (u, v):
            if big[x]:
                st.move(_vkey(x), e, TENTH)
    st.commit()

    # R2
    st = _Stage(ledger, "R2")
    for u, v in g.edges():
        e = _ekey(u, v)
        amount = st.entry[e]
        fs = edge_tri.get((u, v), [])
        if fs:
            for f in fs:
                st.move(e, _fkey(f), amount / len(fs))
        else:
            low = min(deg[u], deg[v])
            targets = [x for x in (u, v) if deg[x] == low]
            for x in targets:
                st.move(e, _vkey(x), amount / len(targets))
    st.commit()

    # R3
    st = _Stage(ledger, "R3")
    for v in range(g.n):
        if big[v]:
            for w in g.adj[v]:
                st.move(_vkey(v), _vkey(w), HALF)
    st.commit()

    # R4
    st = _Stage(ledger, "R4")
    for v in range(g.n):
        if deg[v] in (3, 4) or small[v]:
            for w in g.adj[v]:
                if deg[w] == 2:
                    st.move(_vkey(v), _vkey(w), THREE_FIFTHS)
        nbig = sum(1 for w in g.adj[v] if big[w])
        if (deg[v] == 4 and nbig >= 2) or small[v]:
            for f in vert_tri.get(v, []):
                if any(x != v and not big[x] for x in tri_verts[f]):
                    st.move(_vkey(v), _fkey(f), HALF)
    st.commit()

    # R5
    st = _Stage(ledger, "R5")
    for (a, b), fs in edge_tri.items():
        if not (big[a] and big[b]):
            continue
        for f in fs:
            x = next(y for y in tri_verts[f] if y not in (a, b))
            dst = _vkey(x) if deg[x] <= 4 else _fkey(f)
            st.move(_vkey(b), dst, HALF)  # what a gave b
            st.move(_vkey(a), dst, HALF)  # what b gave a
    st.commit()

    # R6
    st = _Stage(ledger, "R6")
    for v in range(g.n):
        if deg[v] != 3:
            continue
        fs = vert_tri.get(v, [])
        if len(fs) > 1:
            raise PreconditionViolated(f"3-vertex {v} lies on two 3-faces", witness=v)
        for f in fs:
            if st.entry[_fkey(f)] < 0 and st.entry[_vkey(v)] > 0:
                st.move(_vkey(v), _fkey(f), st.entry[_vkey(v)])
    st.commit()
    return ledger


# ---------------------------------------------------------------- configurations

KINDS = ("oneVertex", "keyLemma", "face2vertex", "face33", "threeVertexNoBig", "face3OffNeighbor")


@dataclass(frozen=True)
class Finding:
    kind: str
    witness: tuple


@dataclass
class ConfigurationReport:
    findings: list[Finding]
    beta: int

    def kinds(self) -> dict[str, int]:
        out = {k: 0 for k in KINDS}
        for f in self.findings:
            out[f.kind] += 1
        return out

    def __bool__(self) -> bool:
        return bool(self.findings)


def find_reducible_configurations(x: Union[Graph, PlaneGraph], beta: int = BIG_THRESHOLD) -> ConfigurationReport:
    """Occurrences of the configurations a minimal counterexample cannot contain.

    Face-based kinds are only searched when a PlaneGraph is supplied.
    """
    pg = x if isinstance(x, PlaneGraph) else None
    g = pg.graph if pg else x
    deg = [g.degree(v) for v in range(g.n)]
    big = [d >= beta for d in deg]
    nbig = [sum(1 for w in g.adj[v] if big[w]) for v in range(g.n)]
    out: list[Finding] = []
    for v in range(g.n):
        if deg[v] == 1:
            out.append(Finding("oneVertex", (v,)))
    for u, v in g.edges():
        if not big[u] and not big[v] and nbig[u] <= 1 and nbig[v] <= 1:
            out.append(Finding("keyLemma", (u, v)))
    if pg is not None:
        for i, face in enumerate(pg.faces):
            if len(face) != 3:
                continue
            vs = pg.face_vertices(i)
            for v in vs:
                if deg[v] == 2 and any(not big[w] for w in vs if w != v):
                    out.append(Finding("face2vertex", (i, v)))
            threes = [v for v in vs if deg[v] == 3]
            if len(threes) >= 2 and not any(big[v] for v in vs):
                out.append(Finding("face33", (i,) + tuple(threes)))
            nbf = sum(1 for v in vs if big[v])
            for v in threes:
                if nbf > 1:
                    continue
                for w in g.adj[v]:
                    if w not in vs and not big[w]:
                        out.append(Finding("face3OffNeighbor", (i, v, w)))
    for v in range(g.n):
        if deg[v] == 3 and nbig[v] == 0:
            out.append(Finding("threeVertexNoBig", (v,)))
    return ConfigurationReport(out, beta)


def revalidate(x: Union[Graph, PlaneGraph], finding: Finding, beta: int = BIG_THRESHOLD) -> bool:
    """Independent re-check of one finding against its defining predicate."""
    pg = x if isinstance(x, PlaneGraph) else None
    g = pg.graph if pg else x

    def isbig(v):
        return g.degree(v) >= beta

    def bigcount(v):
        return sum(isbig(w) for w in g.adj[v])

    w = finding.witness
    if finding.kind == "oneVertex":
        return g.degree(w[0]) == 1
    if finding.kind == "keyLemma":
        u, v = w
        return g.has_edge(u, v) and not isbig(u) and not isbig(v) and bigcount(u) <= 1 and bigcount(v) <= 1
    if finding.kind == "threeVertexNoBig":
        return g.degree(w[0]) == 3 and bigcount(w[0]) == 0
    if pg is None:
        return False
    vs = set(pg.face_vertices(w[0]))
    if len(pg.faces[w[0]]) != 3:
        return False
    if finding.kind == "face2vertex":
        v = w[1]
        return v in vs and g.degree(v) == 2 and not all(isbig(u) for u in vs - {v})
    if finding.kind == "face33":
        return sum(g.degree(u) == 3 for u in vs) >= 2 and not any(isbig(u) for u in vs)
    if finding.kind == "face3OffNeighbor":
        _, v, off = w
        return (
            v in vs
            and g.degree(v) == 3
            and sum(isbig(u) for u in vs) <= 1
            and off not in vs
            and g.has_edge(v, off)
            and not isbig(off)
        )
    return False


@dataclass
class ContradictionVerdict:
    verdict: str  # PASS or FAIL
    report: ConfigurationReport
    ledger: ChargeLedger
    witness: tuple[Key, Fraction]

    @property
    def ok(self) -> bool:
        return self.verdict == "PASS"


def discharging_contradiction_check(pg: PlaneGraph, beta: int = BIG_THRESHOLD) -> ContradictionVerdict:
    """Total charge is -8, so a configuration-free input would refute the argument.

    PASS iff some reducible configuration is present; on FAIL the witness is
    the most negative final element.
    """
    check_discharge_domain(pg)
    if pg.graph.max_degree < beta:
        raise PreconditionViolated(f"maximum degree {pg.graph.max_degree} below {beta}")
    ledger = run_discharging(pg, beta, check=False)
    report = find_reducible_configurations(pg, beta)
    return ContradictionVerdict("PASS" if report else "FAIL", report, ledger, ledger.minimum())
