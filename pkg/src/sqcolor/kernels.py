"""Kernels, kernel-perfect orientations and two-clique colorings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import HypothesesTooTight, InternalPigeonholeFailure, PreconditionViolated, TooLarge
from .exact import CorrespondenceAssignment, pad_matchings
from .graph import Graph, _bits

KERNEL_LIMIT = 20
PERFECT_LIMIT = 15

# constants of the original argument, kept as defaults and for reference
PAPER_CROSS_CAP = 11
PAPER_TAIL_SIZE = 11
PAPER_LIST_SLACK = 44
PAPER_T_CAP = 4400
PAPER_CLIQUE_FLOOR = 52811
PAPER_SAVE_FLOOR = 5863
PAPER_EXCLUSION = 11111


class Digraph:
    """Digraph on 0..n-1; a bidirected edge is the pair of opposite arcs."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arcs = frozenset(arcs)
        for t, h in arcs:
            if not (0 <= t < n and 0 <= h < n) or t == h:
                raise ValueError(f"bad arc {t}->{h}")
        self.n = n
        self.arcs = arcs

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"

    @classmethod
    def bidirected(cls, g: Graph) -> "Digraph":
        return cls(g.n, [(u, v) for u, v in g.edges()] + [(v, u) for u, v in g.edges()])

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        out = [0] * self.n
        for t, h in self.arcs:
            out[t] |= 1 << h
        return tuple(out)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for t, h in self.arcs:
            inn[h] |= 1 << t
        return tuple(inn)

    def out_degree(self, v: int) -> int:
        return bin(self.out_masks[v]).count("1")

    def underlying(self) -> Graph:
        return Graph(self.n, {(min(t, h), max(t, h)) for t, h in self.arcs})


def is_kernel(d: Digraph, k: set[int] | frozenset[int], within: Optional[Iterable[int]] = None) -> bool:
    """Direct check of the kernel condition on the sub-digraph induced by ``within``."""
    verts = set(range(d.n)) if within is None else set(within)
    if not set(k) <= verts:
        return False
    for v in verts:
        outs = {w for w in _bits(d.out_masks[v]) if w in verts}
        if (v in k) == bool(outs & set(k)):
            return False
    return True


def _kernel_mask(d: Digraph, allowed: int) -> Optional[int]:
    out = [m & allowed for m in d.out_masks]
    nbr = [(d.out_masks[v] | d.in_masks[v]) & allowed for v in range(d.n)]

    def rec(k: int, undecided: int, excluded: int) -> Optional[int]:
        # find the unabsorbed vertex with the fewest ways to absorb it
        best_v, best_c = -1, -1
        best_size = 99
        for v in _bits(allowed & ~k):
            if out[v] & k:
                continue
            cands = out[v] & undecided
            if undecided >> v & 1:
                cands |= 1 << v
            size = bin(cands).count("1")
            if size < best_size:
                best_v, best_c, best_size = v, cands, size
                if size <= 1:
                    break
        if best_v < 0:
            return k
        if best_size == 0:
            return None
        cands = best_c
        for c in _bits(cands):
            res = rec(k | 1 << c, undecided & ~(1 << c) & ~nbr[c], excluded)
            if res is not None:
                return res
            undecided &= ~(1 << c)
        return None

    return rec(0, allowed, 0)


def find_kernel(d: Digraph, within: Optional[Iterable[int]] = None) -> Optional[frozenset[int]]:
    """A kernel of the sub-digraph induced on ``within`` (default: all), or None."""
    if d.n > KERNEL_LIMIT:
        raise TooLarge(f"kernel search limited to {KERNEL_LIMIT} vertices")
    allowed = (1 << d.n) - 1 if within is None else sum(1 << v for v in set(within))
    res = _kernel_mask(d, allowed)
    return None if res is None else frozenset(_bits(res))


def kernel_perfect_witness(d: Digraph) -> Optional[frozenset[int]]:
    """An induced vertex set without a kernel, or None when ``d`` is kernel-perfect."""
    if d.n > PERFECT_LIMIT:
        raise TooLarge(f"kernel-perfection check limited to {PERFECT_LIMIT} vertices")
    for mask in range(1, 1 << d.n):
        if _kernel_mask(d, mask) is None:
            return frozenset(_bits(mask))
    return None


def is_kernel_perfect(d: Digraph) -> bool:
    return kernel_perfect_witness(d) is None


def kernel_coloring(d: Digraph, lists: Sequence[Iterable[int]]) -> list[int]:
    """List coloring via repeated kernels of the color classes.

    Needs |L(v)| >= d+(v) + 1 and kernels in the sub-digraphs visited; a
    failure of either raises PreconditionViolated carrying the witness.
    """
    n = d.n
    L = [set(x) for x in lists]
    if len(L) != n:
        raise ValueError("one list per vertex required")
    for v in range(n):
        if len(L[v]) < d.out_degree(v) + 1:
            raise PreconditionViolated(f"list of {v} shorter than out-degree + 1", witness=("short-list", v))
    color = [0] * n
    left = set(range(n))
    while left:
        present = set().union(*(L[v] for v in left))
        if not present:
            raise PreconditionViolated("uncolored vertex with an empty list", witness=("empty-list", min(left)))
        c = min(present)
        vc = {v for v in left if c in L[v]}
        k = find_kernel(d, vc)
        if k is None:
            raise PreconditionViolated(f"no kernel on the vertices holding color {c}", witness=("no-kernel", frozenset(vc)))
        for v in k:
            color[v] = c
        left -= k
        for v in vc - k:
            L[v].discard(c)
    return color


# ---------------------------------------------------------------- two cliques

@dataclass
class TwoCliqueInstance:
    """Graph covered by cliques ``b1`` and ``b2`` with special subsets ``t1``, ``t2``."""

    h: Graph
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    t1: frozenset[int] = frozenset()
    t2: frozenset[int] = frozenset()
    cross_cap: int = PAPER_CROSS_CAP
    tail_size: int = PAPER_TAIL_SIZE
    list_slack: int = PAPER_LIST_SLACK
    t_cap: int = PAPER_T_CAP

    def __post_init__(self):
        self.b1 = tuple(sorted(self.b1))
        self.b2 = tuple(sorted(self.b2))
        self.t1 = frozenset(self.t1)
        self.t2 = frozenset(self.t2)
        s1, s2 = set(self.b1), set(self.b2)
        if s1 & s2 or s1 | s2 != set(range(self.h.n)):
            raise ValueError("b1 and b2 must partition the vertex set")
        if not (self.t1 <= s1 and self.t2 <= s2):
            raise ValueError("t_i must lie inside b_i")
        for part in (self.b1, self.b2):
            for i, u in enumerate(part):
                for v in part[i + 1:]:
                    if not self.h.has_edge(u, v):
                        raise ValueError(f"{u} and {v} lie in one clique but are not adjacent")

    @cached_property
    def _sets(self) -> tuple[frozenset[int], frozenset[int]]:
        return frozenset(self.b1), frozenset(self.b2)

    def side(self, v: int) -> int:
        return 1 if v in self._sets[0] else 2

    def cross(self, v: int) -> set[int]:
        s1, s2 = self._sets
        return self.h.adj[v] & (s2 if v in s1 else s1)

    def max_cross_degree(self) -> int:
        return max((len(self.cross(v)) for v in range(self.h.n)), default=0)


def exclusion_count(p: int, tau: int) -> int:
    """Upper bound on B1-vertices that short alternating paths tie to the chosen Z2."""
    with_v = tau * (p - 1) ** 3 + tau * (p - 1) + 1
    without_v = tau * p + tau * p * (p - 1) ** 2
    return max(with_v, without_v)


def size_floor(p: int, tau: int, t_own: int, t_other: int) -> int:
    return max(t_own + tau + exclusion_count(p, tau), t_own + p * t_other + tau)


def _check_const_bounds(inst: TwoCliqueInstance) -> None:
    p, tau, slack = inst.cross_cap, inst.tail_size, inst.list_slack
    if inst.max_cross_degree() > p:
        raise HypothesesTooTight(f"cross degree {inst.max_cross_degree()} exceeds cap {p}")
    if tau < p:
        raise HypothesesTooTight("tail size below the cross-degree cap breaks the out-degree bound")
    for b, t, t_other in ((inst.b1, inst.t1, inst.t2), (inst.b2, inst.t2, inst.t1)):
        if len(t) > inst.t_cap:
            raise HypothesesTooTight(f"|T| = {len(t)} exceeds cap {inst.t_cap}")
        need = size_floor(p, tau, len(t), len(t_other))
        if len(b) < need:
            raise HypothesesTooTight(f"clique of size {len(b)} below counting floor {need}")
        if len(t) + p > len(b) - slack:
            raise HypothesesTooTight("T-vertices could exceed their shortened lists")


def _alternating_reach(inst: TwoCliqueInstance, z2: set[int]) -> set[int]:
    """B1-vertices at the end of an alternating path of length 1 or 3 from ``z2``."""
    b1 = set(inst.b1)
    b2 = set(inst.b2)
    one = set().union(*(inst.h.adj[y] & b1 for y in z2)) if z2 else set()
    two = set().union(*(inst.h.adj[x] & b2 for x in one)) - z2 if one else set()
    three = set().union(*(inst.h.adj[y] & b1 for y in two)) if two else set()
    return one | three


@dataclass
class TwoCliqueOrientation:
    order1: list[int]
    order2: list[int]
    z1: frozenset[int]
    z2: frozenset[int]
    digraph: Digraph
    branch: str

    def index(self, v: int) -> int:
        return self.order1.index(v) if v in self.order1 else self.order2.index(v)


def build_two_clique_orientation(inst: TwoCliqueInstance, check_bounds: bool = True) -> TwoCliqueOrientation:
    """Orderings with short-path-free tails and the matching orientation.

    With ``check_bounds`` false the counting floor is skipped and the tails
    are found (or not) directly; failure still raises HypothesesTooTight.
    """
    if check_bounds:
        _check_const_bounds(inst)
    h = inst.h
    tau = inst.tail_size
    b1, b2 = set(inst.b1), set(inst.b2)
    n_t1 = set().union(*(h.adj[v] for v in inst.t1)) if inst.t1 else set()
    n_t2 = set().union(*(h.adj[v] for v in inst.t2)) if inst.t2 else set()
    z2: Optional[set[int]] = None
    branch = "none"
    for v in inst.b1:
        if v in n_t2:
            continue
        nb = h.adj[v] & b2
        if len(nb) == tau:
            z2 = set(nb)
            branch = "hub"
            break
    if z2 is None:
        pool = [y for y in inst.b2 if y not in inst.t2 and y not in n_t1]
        if len(pool) < tau:
            raise HypothesesTooTight("not enough B2 vertices outside T2 and N(T1) for the tail")
        z2 = set(pool[:tau])
        branch = "free"
    banned = _alternating_reach(inst, z2) | set(inst.t1)
    pool1 = [x for x in inst.b1 if x not in banned]
    if len(pool1) < tau:
        raise HypothesesTooTight("not enough B1 vertices free of short alternating paths")
    z1 = set(pool1[:tau])

    def ordering(part: tuple[int, ...], t: frozenset[int], z: set[int]) -> list[int]:
        head = sorted(t)
        tail = sorted(z)
        return head + [v for v in part if v not in t and v not in z] + tail

    order1 = ordering(inst.b1, inst.t1, z1)
    order2 = ordering(inst.b2, inst.t2, z2)
    pos = {v: i for i, v in enumerate(order1)}
    pos.update({v: i for i, v in enumerate(order2)})
    tails = z1 | z2
    arcs = []
    for u, v in h.edges():
        if (u in b1) == (v in b1):
            lo, hi = (u, v) if pos[u] < pos[v] else (v, u)
            arcs.append((hi, lo))
        elif u in tails or v in tails:
            target = u if u in tails else v
            arcs.append((v if target == u else u, target))
        else:
            arcs += [(u, v), (v, u)]
    return TwoCliqueOrientation(order1, order2, frozenset(z1), frozenset(z2), Digraph(h.n, arcs), branch)


def short_alternating_paths(inst: TwoCliqueInstance, z1: Iterable[int], z2: Iterable[int], max_len: int = 3) -> list[tuple[int, ...]]:
    """All simple alternating paths of length <= max_len from ``z1`` to ``z2``."""
    z2s = set(z2)
    b1 = set(inst.b1)
    found = []

    def walk(path: list[int]) -> None:
        u = path[-1]
        if len(path) > 1 and u in z2s:
            found.append(tuple(path))
        if len(path) - 1 == max_len:
            return
        want_b1 = u not in b1
        for w in sorted(inst.h.adj[u]):
            if (w in b1) == want_b1 and w not in path:
                path.append(w)
                walk(path)
                path.pop()

    for s in sorted(z1):
        walk([s])
    return found


def list_bound(inst: TwoCliqueInstance, v: int) -> int:
    """Guaranteed list size for ``v`` in the two-clique setting."""
    size = len(inst.b1) if inst.side(v) == 1 else len(inst.b2)
    return size - inst.list_slack if v in inst.t1 or v in inst.t2 else size


# ---------------------------------------------------------------- save a color

def _check_save_bounds(inst: TwoCliqueInstance, C: CorrespondenceAssignment) -> tuple[int, int]:
    h = inst.h
    n = len(inst.b1)
    p, slack = inst.cross_cap, inst.list_slack
    if len(inst.b2) != n:
        raise HypothesesTooTight("both cliques must have the same size")
    a = h.max_degree + 1 - n
    if a > p:
        raise HypothesesTooTight(f"Δ(H) - n + 1 = {a} exceeds {p}")
    if inst.max_cross_degree() > p:
        raise HypothesesTooTight("cross degree exceeds the cap")
    for t in (inst.t1, inst.t2):
        if len(t) > inst.t_cap:
            raise HypothesesTooTight(f"|T| = {len(t)} exceeds cap {inst.t_cap}")
        if len(t) + p * p + p > n - slack:
            raise HypothesesTooTight("T-vertices may run out of colors during the greedy phase")
    if n <= slack + 2 * p * p + 2 * p:
        raise HypothesesTooTight("cliques too small for the pigeonhole step")
    if len(inst.t2) + p**3 + p**2 + p > n:
        raise HypothesesTooTight("cannot reserve the final B2 vertices")
    if len(inst.t1) + a * (p * (p - 1) + 1) > n:
        raise HypothesesTooTight("cannot pick A with disjoint B2-neighborhoods")
    for v in range(h.n):
        need = n - slack if v in inst.t1 or v in inst.t2 else n
        if C.f[v] < need:
            raise HypothesesTooTight(f"f({v}) = {C.f[v]} below {need}")
    return n, a


def _tighten(inst: TwoCliqueInstance, C: CorrespondenceAssignment, n: int) -> CorrespondenceAssignment:
    f = [n - inst.list_slack if v in inst.t1 or v in inst.t2 else n for v in range(inst.h.n)]
    m = {}
    for (u, v), pairs in C.matchings.items():
        m[(u, v)] = {(x, y) for x, y in pairs if x <= f[u] and y <= f[v]}
    return pad_matchings(inst.h, CorrespondenceAssignment(f, m))


@dataclass
class SaveColorTrace:
    coloring: list[int]
    a: tuple[int, ...]
    saves: list[tuple[int, int, int, int, int]] = field(default_factory=list)  # (v, w, x, alpha, beta)
    reserved: tuple[int, ...] = ()


def save_color_coloring(inst: TwoCliqueInstance, C: CorrespondenceAssignment, trace: bool = False):
    """C-coloring of a two-clique graph by saving colors for a small set A."""
    h = inst.h
    n, a = _check_save_bounds(inst, C)
    C.validate(h)
    Ct = _tighten(inst, C, n)
    p = inst.cross_cap
    b1, b2 = set(inst.b1), set(inst.b2)
    color = [0] * h.n
    # matchings are injective, so each directed edge maps a color to at most one color
    clash: dict[tuple[int, int], dict[int, int]] = {}
    for (u, v), pairs in Ct.matchings.items():
        clash[(u, v)] = dict(pairs)
        clash[(v, u)] = {y: x for x, y in pairs}

    def conflicts(u: int, c: int, v: int) -> list[int]:
        hit = clash.get((u, v), {}).get(c)
        return [] if hit is None else [hit]

    def available(v: int) -> list[int]:
        bad = set()
        for w in h.adj[v]:
            if color[w]:
                bad.update(conflicts(w, color[w], v))
        return [c for c in range(1, Ct.f[v] + 1) if c not in bad]

    # A: pairwise disjoint B2-neighborhoods, lowest ids first
    chosen: list[int] = []
    blocked: set[int] = set()
    for v in inst.b1:
        if len(chosen) == a:
            break
        if v in inst.t1:
            continue
        nb = h.adj[v] & b2
        if nb & blocked:
            continue
        chosen.append(v)
        blocked |= nb
    if len(chosen) < a:
        raise InternalPigeonholeFailure("could not pick A despite the counting bound")
    A = set(chosen)

    saves = []
    for v in chosen:
        for w in sorted(h.adj[v] & b2):
            cand = [x for x in inst.b1 if not color[x] and x not in A and x not in inst.t1 and not h.has_edge(x, w)]
            if not cand:
                raise InternalPigeonholeFailure(f"no partner in B1 for {w}")
            x = cand[0]
            via_w = {}
            for alpha in available(w):
                for g in conflicts(w, alpha, v):
                    via_w.setdefault(g, alpha)
            pick = None
            for beta in available(x):
                for g in conflicts(x, beta, v):
                    if g in via_w:
                        pick = (via_w[g], beta)
                        break
                if pick:
                    break
            if pick is None:
                raise InternalPigeonholeFailure(f"no shared forbidden color for {v} via {w} and {x}")
            color[w], color[x] = pick
            saves.append((v, w, x, pick[0], pick[1]))

    def greedy(v: int) -> None:
        av = available(v)
        if not av:
            raise InternalPigeonholeFailure(f"greedy phase stuck at {v}")
        color[v] = av[0]

    for v in sorted(inst.t2):
        if not color[v]:
            greedy(v)
    rest2 = [y for y in inst.b2 if not color[y] and y not in inst.t2]
    quiet = [y for y in rest2 if not any(color[x] for x in h.adj[y] & b1)]
    if len(quiet) < min(p, len(rest2)):
        raise InternalPigeonholeFailure("not enough B2 vertices free of colored B1 neighbors")
    reserved = quiet[len(quiet) - min(p, len(rest2)):]
    for y in [y for y in rest2 if y not in reserved] + reserved:
        greedy(y)
    for v in sorted(inst.t1):
        greedy(v)
    for v in inst.b1:
        if not color[v] and v not in A:
            greedy(v)
    for v in chosen:
        greedy(v)
    if trace:
        return SaveColorTrace(color, tuple(chosen), saves, tuple(reserved))
    return color


def random_two_clique_instance(
    n1: int,
    n2: int,
    p: int,
    seed: int,
    t1_size: int = 0,
    t2_size: int = 0,
    cross_edges: Optional[int] = None,
    **params,
) -> TwoCliqueInstance:
    """Two cliques 0..n1-1 and n1..n1+n2-1 with random cross edges of degree <= p."""
    import random

    rng = random.Random(seed)
    b1 = list(range(n1))
    b2 = list(range(n1, n1 + n2))
    edges = [(u, v) for i, u in enumerate(b1) for v in b1[i + 1:]]
    edges += [(u, v) for i, u in enumerate(b2) for v in b2[i + 1:]]
    deg = [0] * (n1 + n2)
    target = cross_edges if cross_edges is not None else rng.randint(0, p * min(n1, n2))
    pairs = [(u, v) for u in b1 for v in b2]
    rng.shuffle(pairs)
    added = 0
    for u, v in pairs:
        if added == target:
            break
        if deg[u] < p and deg[v] < p:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
            added += 1
    t1 = frozenset(rng.sample(b1, t1_size))
    t2 = frozenset(rng.sample(b2, t2_size))
    return TwoCliqueInstance(Graph(n1 + n2, edges), tuple(b1), tuple(b2), t1, t2, cross_cap=p, **params)


def random_correspondence(inst: TwoCliqueInstance, seed: int, extra: int = 2, density: float = 1.0) -> CorrespondenceAssignment:
    """Capacities at or a little above the two-clique thresholds with random matchings."""
    import random

    rng = random.Random(seed)
    f = [list_bound(inst, v) + rng.randint(0, extra) for v in range(inst.h.n)]
    m = {}
    for u, v in inst.h.edges():
        a = list(range(1, f[u] + 1))
        b = list(range(1, f[v] + 1))
        rng.shuffle(a)
        rng.shuffle(b)
        m[(u, v)] = {(x, y) for x, y in zip(a, b) if rng.random() < density}
    return CorrespondenceAssignment(f, m)
