"""Exact coloring solvers: chromatic number, list, correspondence, choosability."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .degeneracy import degeneracy_order, greedy_color_from_order
from .errors import TooLarge
from .graph import Graph, _bits

CHROMATIC_LIMIT = 64
LIST_LIMIT = 30
CORR_LIMIT = 30
CHOOSE_LIMIT = 8
CORR_EXHAUSTIVE_BUDGET = 50_000


# ---------------------------------------------------------------- cliques

def max_clique(h: Graph) -> list[int]:
    """A maximum clique by greedy-coloring-bounded branch and bound."""
    masks = h.masks
    best: list[int] = []

    def expand(cur: list[int], cand: int) -> None:
        nonlocal best
        if not cand:
            if len(cur) > len(best):
                best = cur[:]
            return
        # color-class bound on the candidate set
        order = []
        bounds = []
        rest = cand
        c = 0
        while rest:
            c += 1
            q = rest
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~(1 << v) & ~masks[v]
                rest &= ~(1 << v)
                order.append(v)
                bounds.append(c)
        for v, b in zip(reversed(order), reversed(bounds)):
            if len(cur) + b <= len(best):
                return
            cur.append(v)
            expand(cur, cand & masks[v])
            cur.pop()
            cand &= ~(1 << v)

    expand([], (1 << h.n) - 1)
    return sorted(best)


def clique_number(h: Graph) -> int:
    return len(max_clique(h)) if h.n else 0


# ---------------------------------------------------------------- chromatic number

def chromatic_number(h: Graph, with_coloring: bool = False):
    """Exact χ by DSATUR branch and bound.

    The clique found first is precolored 1..ω to break color symmetry; the
    incumbent starts from first-fit along a degeneracy order.
    """
    n = h.n
    if n > CHROMATIC_LIMIT:
        raise TooLarge(f"chromatic number solver is exact only up to {CHROMATIC_LIMIT} vertices")
    if n == 0:
        return (0, []) if with_coloring else 0
    order, _ = degeneracy_order(h)
    best_col = greedy_color_from_order(h, order)
    ub = max(best_col)
    clique = max_clique(h)
    lb = len(clique)
    if lb == ub:
        return (ub, best_col) if with_coloring else ub

    adj = [sorted(a) for a in h.adj]
    color = [0] * n
    sat = [0] * n  # bitmask of colors seen among colored neighbors
    count = [[0] * (n + 2) for _ in range(n)]  # neighbor color multiplicities

    def assign(v: int, c: int) -> None:
        color[v] = c
        for w in adj[v]:
            count[w][c] += 1
            if count[w][c] == 1:
                sat[w] |= 1 << c

    def unassign(v: int) -> None:
        c = color[v]
        color[v] = 0
        for w in adj[v]:
            count[w][c] -= 1
            if count[w][c] == 0:
                sat[w] &= ~(1 << c)

    for i, v in enumerate(clique):
        assign(v, i + 1)

    best = [ub]
    found = [best_col]
    remaining = n - lb

    def pick() -> int:
        bv, bkey = -1, None
        for v in range(n):
            if color[v]:
                continue
            key = (bin(sat[v]).count("1"), sum(1 for w in adj[v] if not color[w]))
            if bkey is None or key > bkey:
                bv, bkey = v, key
        return bv

    def search(used: int, left: int) -> bool:
        if left == 0:
            best[0] = used
            found[0] = color[:]
            return best[0] == lb
        v = pick()
        s = sat[v]
        for c in range(1, min(used + 1, best[0] - 1) + 1):
            if c >= best[0]:
                break
            if (s >> c) & 1:
                continue
            assign(v, c)
            done = search(max(used, c), left - 1)
            unassign(v)
            if done:
                return True
        return False

    search(lb, remaining)
    return (best[0], found[0]) if with_coloring else best[0]


def is_k_colorable_bruteforce(h: Graph, k: int) -> bool:
    """Reference check by plain enumeration (tiny graphs only)."""
    edges = h.edges()
    for col in itertools.product(range(k), repeat=h.n):
        if all(col[u] != col[v] for u, v in edges):
            return True
    return h.n == 0


# ---------------------------------------------------------------- list coloring

ListAssignment = Sequence[frozenset]


def list_color(h: Graph, lists: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """Proper coloring with color(v) in lists[v], or None after exhausting the search."""
    n = h.n
    if n > LIST_LIMIT:
        raise TooLarge(f"list coloring is exhaustive only up to {LIST_LIMIT} vertices")
    if len(lists) != n:
        raise ValueError("one list per vertex required")
    avail = [set(L) for L in lists]
    if any(not a for a in avail):
        return None
    adj = [sorted(a) for a in h.adj]
    color = [0] * n

    def search(left: int) -> bool:
        if left == 0:
            return True
        v = min((u for u in range(n) if not color[u]), key=lambda u: (len(avail[u]), -len(adj[u])))
        for c in sorted(avail[v]):
            touched = [w for w in adj[v] if not color[w] and c in avail[w]]
            if any(len(avail[w]) == 1 for w in touched):
                continue
            color[v] = c
            for w in touched:
                avail[w].discard(c)
            if search(left - 1):
                return True
            for w in touched:
                avail[w].add(c)
            color[v] = 0
        return False

    return color if search(n) else None


def validate_list_coloring(h: Graph, lists: Sequence[Sequence[int]], color: Sequence[int]) -> bool:
    if len(color) != h.n:
        return False
    for v in range(h.n):
        if color[v] not in set(lists[v]):
            return False
    for u in range(h.n):
        for w in h.adj[u]:
            if color[u] == color[w]:
                return False
    return True


# ---------------------------------------------------------------- correspondence coloring

@dataclass
class CorrespondenceAssignment:
    """Capacities f(v) and, per edge (u, v) with u < v, matched pairs (a, b) meaning (u,a)~(v,b)."""

    f: list[int]
    matchings: dict[tuple[int, int], set[tuple[int, int]]] = field(default_factory=dict)

    def validate(self, h: Graph) -> None:
        if len(self.f) != h.n:
            raise ValueError("one capacity per vertex required")
        for (u, v), pairs in self.matchings.items():
            if not (u < v and h.has_edge(u, v)):
                raise ValueError(f"matching on non-edge ({u}, {v})")
            left = [a for a, _ in pairs]
            right = [b for _, b in pairs]
            if len(set(left)) != len(left) or len(set(right)) != len(right):
                raise ValueError(f"matching on ({u}, {v}) is not injective")
            if any(not 1 <= a <= self.f[u] for a in left) or any(not 1 <= b <= self.f[v] for b in right):
                raise ValueError(f"matching on ({u}, {v}) references a missing color")

    def conflicts(self, u: int, a: int, v: int) -> set[int]:
        """Colors of v forbidden when u takes color a."""
        if u < v:
            return {y for x, y in self.matchings.get((u, v), ()) if x == a}
        return {x for x, y in self.matchings.get((v, u), ()) if y == a}

    def copy(self) -> "CorrespondenceAssignment":
        return CorrespondenceAssignment(list(self.f), {e: set(p) for e, p in self.matchings.items()})


def pad_matchings(h: Graph, C: CorrespondenceAssignment) -> CorrespondenceAssignment:
    """Extend every matching until it saturates the smaller side (new pairs lowest-first)."""
    out = C.copy()
    for u, v in h.edges():
        pairs = out.matchings.setdefault((u, v), set())
        used_u = {x for x, _ in pairs}
        used_v = {y for _, y in pairs}
        free_u = [a for a in range(1, out.f[u] + 1) if a not in used_u]
        free_v = [b for b in range(1, out.f[v] + 1) if b not in used_v]
        for a, b in zip(free_u, free_v):
            pairs.add((a, b))
    return out


def corr_color(h: Graph, C: CorrespondenceAssignment) -> Optional[list[int]]:
    n = h.n
    if n > CORR_LIMIT:
        raise TooLarge(f"correspondence coloring is exhaustive only up to {CORR_LIMIT} vertices")
    avail = [set(range(1, C.f[v] + 1)) for v in range(n)]
    if any(not a for a in avail):
        return None
    adj = [sorted(a) for a in h.adj]
    forb: dict[tuple[int, int, int], set[int]] = {}
    for (u, v), pairs in C.matchings.items():
        for a, b in pairs:
            forb.setdefault((u, a, v), set()).add(b)
            forb.setdefault((v, b, u), set()).add(a)
    color = [0] * n

    def search(left: int) -> bool:
        if left == 0:
            return True
        v = min((u for u in range(n) if not color[u]), key=lambda u: (len(avail[u]), -len(adj[u])))
        for c in sorted(avail[v]):
            removed = []
            dead = False
            for w in adj[v]:
                if color[w]:
                    continue
                for b in forb.get((v, c, w), ()):
                    if b in avail[w]:
                        avail[w].discard(b)
                        removed.append((w, b))
                if not avail[w]:
                    dead = True
            if not dead:
                color[v] = c
                if search(left - 1):
                    return True
                color[v] = 0
            for w, b in removed:
                avail[w].add(b)
        return False

    return color if search(n) else None


def validate_corr_coloring(h: Graph, C: CorrespondenceAssignment, color: Sequence[int]) -> bool:
    if len(color) != h.n:
        return False
    for v in range(h.n):
        if not 1 <= color[v] <= C.f[v]:
            return False
    for u, v in h.edges():
        if (color[u], color[v]) in C.matchings.get((u, v), set()):
            return False
    return True


# ---------------------------------------------------------------- choosability

def _vertex_order(h: Graph) -> list[int]:
    last = max(range(h.n), key=lambda v: (h.degree(v), -v))
    rest = []
    seen = {last}
    frontier = sorted(h.adj[last])
    # BFS from the neighbors of the eliminated vertex keeps constraints local
    for s in frontier + list(range(h.n)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            rest.append(u)
            for w in sorted(h.adj[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return rest + [last]


def has_bad_list_assignment(h: Graph, k: int) -> Optional[list[frozenset]]:
    """Search for k-lists admitting no proper coloring; return one if it exists.

    Lists are generated in restricted-growth form (fresh colors appear in
    increasing order), which covers every assignment up to renaming.
    """
    n = h.n
    if n == 0:
        return None
    if k <= 0:
        return [frozenset()] * n
    order = _vertex_order(h)
    pos = {v: i for i, v in enumerate(order)}
    last = order[-1]
    back = [[pos[w] for w in h.adj[v] if pos[w] < pos[v]] for v in order]
    last_nbrs = [pos[w] for w in h.adj[last]]

    def common_of(colorings: list[tuple]) -> set:
        common = None
        for phi in colorings:
            seen = {phi[i] for i in last_nbrs}
            common = seen if common is None else common & seen
            if len(common) < k:
                break
        return common or set()

    def fill(i: int, used: int) -> list[frozenset]:
        # lists past a dead end are irrelevant; give them fresh colors
        return [frozenset(range(used + 1 + t * k, used + 1 + (t + 1) * k)) for t in range(n - i)]

    def rec(i: int, colorings: list[tuple], used: int) -> Optional[list[frozenset]]:
        if i == n - 1:
            common = common_of(colorings)
            return [frozenset(sorted(common)[:k])] if len(common) >= k else None
        for j in range(min(k, used), -1, -1):
            fresh = tuple(range(used + 1, used + k - j + 1))
            for old in itertools.combinations(range(1, used + 1), j):
                L = old + fresh
                nxt = [phi + (c,) for phi in colorings for c in L if all(phi[b] != c for b in back[i])]
                if not nxt:
                    return [frozenset(L)] + fill(i + 1, used + k - j)
                tail = rec(i + 1, nxt, used + k - j)
                if tail is not None:
                    return [frozenset(L)] + tail
        return None

    found = rec(0, [()], 0)
    if found is None:
        return None
    by_vertex = [frozenset()] * n
    for i, v in enumerate(order):
        by_vertex[v] = found[i]
    return by_vertex


def choosability(h: Graph) -> int:
    """χℓ by increasing k from χ until no bad k-list assignment exists."""
    if h.n > CHOOSE_LIMIT:
        raise TooLarge(f"choosability search is exhaustive only up to {CHOOSE_LIMIT} vertices")
    if h.n == 0:
        return 0
    _, d = degeneracy_order(h)
    k = chromatic_number(h)
    while k < d + 1 and has_bad_list_assignment(h, k) is not None:
        k += 1
    return k


# ---------------------------------------------------------------- correspondence chromatic number

@dataclass(frozen=True)
class CorrChromaticResult:
    value: int
    exact: bool
    mode: str


def _spanning_forest(h: Graph) -> set[tuple[int, int]]:
    tree = set()
    seen = [False] * h.n
    for s in range(h.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in sorted(h.adj[u]):
                if not seen[w]:
                    seen[w] = True
                    tree.add((min(u, w), max(u, w)))
                    stack.append(w)
    return tree


def _has_bad_corr(h: Graph, k: int, non_tree: list[tuple[int, int]], tree: set[tuple[int, int]]) -> bool:
    ident = {(a, a) for a in range(1, k + 1)}
    base = {e: ident for e in tree}
    perms = list(itertools.permutations(range(1, k + 1)))
    for choice in itertools.product(perms, repeat=len(non_tree)):
        m = dict(base)
        for e, p in zip(non_tree, choice):
            m[e] = {(a + 1, p[a]) for a in range(k)}
        if corr_color(h, CorrespondenceAssignment([k] * h.n, m)) is None:
            return True
    return False


def corr_chromatic(h: Graph, budget: int = CORR_EXHAUSTIVE_BUDGET, samples: int = 2000, seed: int = 0) -> CorrChromaticResult:
    """χ_corr, exact when the assignment space fits ``budget``, else a sampled lower bound.

    Full (perfect) matchings suffice: a bad assignment stays bad when its
    matchings are completed.  Along a spanning forest each matching can be
    normalized to the identity by permuting color names vertex by vertex.
    """
    if h.n == 0:
        return CorrChromaticResult(0, True, "exhaustive")
    _, d = degeneracy_order(h)
    k = chromatic_number(h)
    tree = _spanning_forest(h)
    non_tree = [e for e in h.edges() if e not in tree]
    exact = True
    rng = random.Random(seed)
    while k < d + 1:
        if math.factorial(k) ** len(non_tree) <= budget:
            if not _has_bad_corr(h, k, non_tree, tree):
                return CorrChromaticResult(k, True, "exhaustive")
        else:
            exact = False
            hit = False
            for _ in range(samples):
                m = {e: {(a + 1, b) for a, b in enumerate(rng.sample(range(1, k + 1), k))} for e in non_tree}
                m.update({e: {(a, a) for a in range(1, k + 1)} for e in tree})
                if corr_color(h, CorrespondenceAssignment([k] * h.n, m)) is None:
                    hit = True
                    break
            if not hit:
                return CorrChromaticResult(k, False, "sampled")
        k += 1
    return CorrChromaticResult(k, exact, "exhaustive" if exact else "sampled")
