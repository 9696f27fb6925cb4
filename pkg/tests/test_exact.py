import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sqcolor.errors import TooLarge
from sqcolor.exact import (
    CorrespondenceAssignment,
    choosability,
    chromatic_number,
    clique_number,
    corr_chromatic,
    corr_color,
    has_bad_list_assignment,
    list_color,
    max_clique,
    pad_matchings,
    validate_corr_coloring,
    validate_list_coloring,
)
from sqcolor.generators import complete, connected_graph_catalog, cycle, gadget, petersen
from sqcolor.graph import Graph, square

from oracles import chromatic_bruteforce, proper


def test_paper_tightness_examples():
    assert chromatic_number(square(cycle(5))) == 5
    assert chromatic_number(square(petersen())) == 10
    assert chromatic_number(square(gadget(3, 3))) == 9


def test_coloring_is_proper():
    h = square(gadget(5, 3))
    chi, col = chromatic_number(h, with_coloring=True)
    assert proper(h, col) and len(set(col)) == chi


small_graphs = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
)


@settings(max_examples=80, deadline=None)
@given(small_graphs)
def test_chromatic_matches_bruteforce(data):
    n, pairs = data
    g = Graph(n, {(min(u, v), max(u, v)) for u, v in pairs if u != v})
    assert chromatic_number(g) == chromatic_bruteforce(g)


def test_clique():
    g = square(cycle(7))
    assert clique_number(g) == 3
    q = max_clique(complete(6))
    assert sorted(q) == list(range(6))


def test_size_guard():
    with pytest.raises(TooLarge):
        chromatic_number(Graph(65, []))
    with pytest.raises(TooLarge):
        list_color(Graph(31, []), [[1]] * 31)


def test_list_examples():
    k2 = complete(2)
    assert list_color(k2, [[1], [1]]) is None
    col = list_color(k2, [[1, 2], [1, 2]])
    assert validate_list_coloring(k2, [[1, 2], [1, 2]], col)
    c5 = cycle(5)
    assert validate_list_coloring(c5, [[1, 2, 3]] * 5, list_color(c5, [[1, 2, 3]] * 5))


def test_list_coloring_vs_product_oracle():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 6)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
        lists = [rng.sample(range(1, 5), rng.randint(1, 3)) for _ in range(n)]
        want = any(proper(g, c) for c in itertools.product(*lists))
        got = list_color(g, lists)
        assert (got is not None) == want
        if got is not None:
            assert validate_list_coloring(g, lists, got)


def test_corr_examples():
    k2 = complete(2)
    C = CorrespondenceAssignment([2, 2], {(0, 1): {(1, 1), (2, 2)}})
    col = corr_color(k2, C)
    assert col is not None and validate_corr_coloring(k2, C, col)
    assert corr_color(k2, CorrespondenceAssignment([1, 1], {(0, 1): {(1, 1)}})) is None
    c4 = cycle(4)
    ident = {e: {(1, 1), (2, 2)} for e in c4.edges()}
    assert corr_color(c4, CorrespondenceAssignment([2] * 4, ident)) is not None


def test_corr_vs_product_oracle():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 5)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6])
        f = [rng.randint(1, 3) for _ in range(n)]
        m = {}
        for u, v in g.edges():
            a = list(range(1, f[u] + 1))
            b = list(range(1, f[v] + 1))
            rng.shuffle(b)
            m[(u, v)] = {(x, y) for x, y in zip(a, b) if rng.random() < 0.8}
        C = CorrespondenceAssignment(f, m)
        C.validate(g)

        def ok(col):
            return all((col[u], col[v]) not in m.get((u, v), ()) for u, v in g.edges())

        want = any(ok(c) for c in itertools.product(*[range(1, k + 1) for k in f]))
        got = corr_color(g, C)
        assert (got is not None) == want
        if got:
            assert validate_corr_coloring(g, C, got)


def test_pad_matchings_saturates():
    g = complete(2)
    C = pad_matchings(g, CorrespondenceAssignment([3, 2], {(0, 1): {(2, 1)}}))
    assert len(C.matchings[(0, 1)]) == 2


def test_corr_validate_rejects_missing_color():
    with pytest.raises(ValueError):
        CorrespondenceAssignment([1, 1], {(0, 1): {(2, 1)}}).validate(complete(2))


def test_choosability_values():
    from sqcolor.generators import path

    k23 = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    assert choosability(k23) == 2
    k24 = Graph(6, [(u, v) for u in (0, 1) for v in range(2, 6)])
    assert choosability(k24) == 3
    assert choosability(cycle(5)) == 3
    assert choosability(cycle(6)) == 2
    assert choosability(path(4)) == 2
    assert has_bad_list_assignment(cycle(5), 2) is not None


def test_corr_chromatic_values():
    assert corr_chromatic(complete(2)).value == 2
    assert corr_chromatic(cycle(4)).value == 3
    assert corr_chromatic(complete(3)).value == 3
    assert corr_chromatic(cycle(4)).exact


def test_chi_le_choice_le_corr_on_catalog():
    for g in connected_graph_catalog(5):
        chi = chromatic_number(g)
        ch = choosability(g)
        corr = corr_chromatic(g)
        assert corr.exact
        assert chi <= ch <= corr.value
