import random

import pytest

from sqcolor.errors import HypothesesTooTight, PreconditionViolated, TooLarge
from sqcolor.exact import CorrespondenceAssignment, validate_corr_coloring
from sqcolor.graph import Graph
from sqcolor.kernels import (
    PAPER_CLIQUE_FLOOR,
    PAPER_CROSS_CAP,
    PAPER_TAIL_SIZE,
    PAPER_T_CAP,
    Digraph,
    TwoCliqueInstance,
    build_two_clique_orientation,
    exclusion_count,
    find_kernel,
    is_kernel,
    is_kernel_perfect,
    kernel_coloring,
    kernel_perfect_witness,
    list_bound,
    random_correspondence,
    random_two_clique_instance,
    save_color_coloring,
    short_alternating_paths,
    size_floor,
)

from oracles import kernel_perfect_bruteforce, kernels_bruteforce, proper


def dc3():
    return Digraph(3, [(0, 1), (1, 2), (2, 0)])


def test_single_arc():
    assert find_kernel(Digraph(2, [(0, 1)])) == frozenset({1})


def test_directed_triangle():
    assert find_kernel(dc3()) is None
    assert not is_kernel_perfect(dc3())
    assert kernel_perfect_witness(dc3()) == frozenset({0, 1, 2})


def test_bidirected_k3():
    d = Digraph.bidirected(Graph(3, [(0, 1), (0, 2), (1, 2)]))
    assert is_kernel_perfect(d)


def random_dag(rng, n):
    arcs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    perm = list(range(n))
    rng.shuffle(perm)
    return Digraph(n, [(perm[u], perm[v]) for u, v in arcs])


def test_dags_have_kernels_and_are_perfect():
    rng = random.Random(1)
    for _ in range(30):
        d = random_dag(rng, rng.randint(1, 9))
        k = find_kernel(d)
        assert k is not None and is_kernel(d, k)
    for _ in range(10):
        assert is_kernel_perfect(random_dag(rng, rng.randint(1, 7)))


def test_kernel_search_matches_oracle():
    rng = random.Random(7)
    for _ in range(80):
        n = rng.randint(1, 7)
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.3]
        d = Digraph(n, arcs)
        k = find_kernel(d)
        oracle = kernels_bruteforce(n, arcs)
        assert (k is not None) == bool(oracle)
        if k is not None:
            assert set(k) in oracle
        if n <= 5:
            assert is_kernel_perfect(d) == kernel_perfect_bruteforce(n, arcs)


def test_kernel_guard():
    with pytest.raises(TooLarge):
        find_kernel(Digraph(21, []))


def test_kernel_coloring_examples():
    d = Digraph.bidirected(Graph(2, [(0, 1)]))
    col = kernel_coloring(d, [{1, 2}, {2, 3}])
    assert col[0] != col[1] and col[0] in {1, 2} and col[1] in {2, 3}
    path = Digraph(3, [(0, 1), (1, 2)])
    col = kernel_coloring(path, [{1, 2}] * 3)
    assert proper(path.underlying(), col)


def test_kernel_coloring_preconditions():
    with pytest.raises(PreconditionViolated) as exc:
        kernel_coloring(Digraph(2, [(0, 1)]), [{1}, {1}])
    assert exc.value.witness == ("short-list", 0)
    with pytest.raises(PreconditionViolated) as exc:
        kernel_coloring(dc3(), [{1, 2}] * 3)
    assert exc.value.witness[0] == "no-kernel"


def test_paper_constants():
    assert exclusion_count(PAPER_CROSS_CAP, PAPER_TAIL_SIZE) == 12221
    assert size_floor(PAPER_CROSS_CAP, PAPER_TAIL_SIZE, PAPER_T_CAP, PAPER_T_CAP) == PAPER_CLIQUE_FLOOR


def test_two_clique_too_tight():
    inst = random_two_clique_instance(6, 6, 2, 0, tail_size=2, list_slack=1, t_cap=10)
    with pytest.raises(HypothesesTooTight):
        build_two_clique_orientation(inst)


def test_two_clique_scaled_40():
    inst = random_two_clique_instance(40, 40, 2, 0, tail_size=2, list_slack=1, t_cap=10)
    o = build_two_clique_orientation(inst)
    assert len(o.z1) == len(o.z2) == 2
    assert short_alternating_paths(inst, o.z1, o.z2) == []


def test_no_cross_edges_any_order():
    inst = random_two_clique_instance(5, 5, 1, 0, cross_edges=0, tail_size=1, list_slack=1)
    o = build_two_clique_orientation(inst, check_bounds=False)
    assert is_kernel_perfect(o.digraph)


def test_small_orientations_kernel_perfect():
    for seed in range(12):
        p = 1 + seed % 2
        inst = random_two_clique_instance(6, 6, p, seed, t1_size=1, t2_size=1, tail_size=p, list_slack=1)
        try:
            o = build_two_clique_orientation(inst, check_bounds=False)
        except HypothesesTooTight:
            continue
        d = o.digraph
        assert is_kernel_perfect(d)
        for v in range(d.n):
            assert d.out_degree(v) + 1 <= list_bound(inst, v)


def test_save_color_trivial_two_cliques():
    n = 8
    g = Graph(2 * n, [(u, v) for part in (range(n), range(n, 2 * n)) for u in part for v in part if u < v])
    inst = TwoCliqueInstance(g, tuple(range(n)), tuple(range(n, 2 * n)), cross_cap=1, tail_size=1, list_slack=1, t_cap=2)
    C = CorrespondenceAssignment([n] * (2 * n), {e: {(a, a) for a in range(1, n + 1)} for e in g.edges()})
    col = save_color_coloring(inst, C)
    assert validate_corr_coloring(g, C, col)


def test_save_color_scaled_instances():
    for seed in range(5):
        inst = random_two_clique_instance(60, 60, 3, seed, t1_size=5, t2_size=5, tail_size=3, list_slack=4, t_cap=5)
        C = random_correspondence(inst, seed)
        col = save_color_coloring(inst, C)
        assert validate_corr_coloring(inst.h, C, col)


def test_save_color_degree_precondition():
    inst = random_two_clique_instance(20, 20, 2, 0, cross_edges=40, tail_size=1, list_slack=1, t_cap=2)
    # a fourth cross edge at vertex 0 pushes Δ(H) - n + 1 past p
    edges = list(inst.h.edges())
    extra = [(0, v) for v in range(20, 40) if not inst.h.has_edge(0, v)][:3]
    g = Graph(40, edges + extra)
    bad = TwoCliqueInstance(g, inst.b1, inst.b2, cross_cap=2, tail_size=1, list_slack=1, t_cap=2)
    C = CorrespondenceAssignment([20] * 40, {})
    with pytest.raises(HypothesesTooTight):
        save_color_coloring(bad, C)
