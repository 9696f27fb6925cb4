import random

import pytest
from hypothesis import given, settings, strategies as st

from sqcolor.errors import CapExceeded
from sqcolor.generators import complete, cycle, gadget, path, petersen, star, wegner_figure
from sqcolor.graph import (
    Graph,
    bfs_distances,
    classify_vertices,
    default_threshold,
    distance2_neighborhood,
    forbidden_cycles,
    has_cycle_of_length,
    square,
)

from oracles import bfs, square_edges


def test_square_of_c5_is_k5():
    assert square(cycle(5)) == complete(5)


def test_square_of_petersen_is_k10():
    assert square(petersen()) == complete(10)


def test_square_of_p3_is_triangle():
    assert square(path(3)) == complete(3)


def test_distance2_star_center_sees_all_leaves():
    assert distance2_neighborhood(star(4), 0) == frozenset({1, 2, 3, 4})


def test_distance2_c6():
    nb = distance2_neighborhood(cycle(6), 0)
    assert nb == frozenset({1, 2, 4, 5})


def test_distance2_petersen_everything():
    g = petersen()
    for v in range(10):
        assert distance2_neighborhood(g, v) == frozenset(range(10)) - {v}


def test_square_of_square_p5_matches_distance_four():
    g = path(5)
    h = square(square(g))
    adj = [sorted(g.adj[v]) for v in range(g.n)]
    want = {(u, v) for u in range(5) for v, d in bfs(adj, u).items() if u < v and d <= 4}
    assert set(h.edges()) == want


random_graphs = st.integers(min_value=1, max_value=50).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n),
    )
)


@settings(max_examples=60, deadline=None)
@given(random_graphs)
def test_square_matches_bfs_oracle(data):
    n, pairs = data
    g = Graph(n, {(min(u, v), max(u, v)) for u, v in pairs if u != v})
    h = square(g)
    assert set(h.edges()) == square_edges(g)
    assert set(g.edges()) <= set(h.edges())
    assert h.max_degree <= g.max_degree ** 2


def test_bfs_distances_on_path():
    assert bfs_distances(path(4), 0) == [0, 1, 2, 3]


def test_classify_gadget():
    vc = classify_vertices(gadget(3, 3), 5)
    assert vc.big == frozenset({0, 1, 2})
    assert len(vc.small) == 9
    assert vc.s[2] == vc.small


def test_classify_k2():
    vc = classify_vertices(complete(2), 10)
    assert not vc.big and vc.s[0] == frozenset({0, 1})


def test_classify_star12():
    vc = classify_vertices(star(12), 10)
    assert vc.big == frozenset({0})
    assert vc.s[1] == frozenset(range(1, 13))


def test_default_threshold_is_ceil_sqrt():
    assert default_threshold(star(10)) == 4
    assert default_threshold(star(9)) == 3


def test_forbidden_cycle_c4():
    assert forbidden_cycles(cycle(4), {4}) == [(0, 1, 2, 3)]


def test_gadget_has_four_cycles():
    assert forbidden_cycles(gadget(3, 3), {4})


def test_wegner_figure_four_cycles_match_oracle():
    # two middles on the same hub pair close a 4-cycle, so the figure is not C4-free
    import networkx as nx

    g = wegner_figure().graph
    G = nx.Graph(g.edges())
    want = sum(1 for c in nx.simple_cycles(G, length_bound=4) if len(c) == 4)
    found = forbidden_cycles(g, {4})
    assert len(found) == want > 0


def test_cycle_cap():
    with pytest.raises(CapExceeded):
        forbidden_cycles(cycle(5), {13}, cap=12)
    with pytest.raises(CapExceeded):
        forbidden_cycles(cycle(5), {7}, cap=6)


def test_cycle_count_matches_networkx():
    import networkx as nx

    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(4, 9)
        edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4}
        g = Graph(n, edges)
        G = nx.Graph(list(edges))
        want = sum(1 for c in nx.simple_cycles(G, length_bound=5) if len(c) == 5)
        assert len(forbidden_cycles(g, {5})) == want
        assert has_cycle_of_length(g, 5) == (want > 0)


def test_graph_basics():
    g = Graph(4, [(0, 1), (2, 3)])
    assert g.m == 2 and not g.is_connected()
    assert sorted(map(sorted, g.components())) == [[0, 1], [2, 3]]
    sub, back = g.induced([1, 2, 3])
    assert sub.m == 1 and back == [1, 2, 3]
