import random

import pytest
from hypothesis import given, settings, strategies as st

from sqcolor.errors import TooLarge
from sqcolor.games import (
    Orientation,
    alon_tarsi_number,
    eulerian_parity_diff,
    eulerian_parity_diff_bruteforce,
    paint_number,
    parameter_chain_check,
)
from sqcolor.generators import complete, connected_graph_catalog, cycle, path, star
from sqcolor.graph import Graph


def directed_cycle(n):
    return Orientation(n, tuple((i, (i + 1) % n) for i in range(n)))


def test_parity_examples():
    assert eulerian_parity_diff(directed_cycle(4)) == 2
    assert eulerian_parity_diff(directed_cycle(3)) == 0


def test_acyclic_orientation_gives_one():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(2, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        # low-to-high arcs follow a topological order
        assert eulerian_parity_diff(Orientation(n, tuple(edges))) == 1


def test_forest_any_orientation_gives_one():
    g = path(7)
    rng = random.Random(0)
    for _ in range(10):
        heads = [rng.choice(e) for e in g.edges()]
        assert eulerian_parity_diff(Orientation.from_heads(g, heads)) == 1


arc_sets = st.integers(min_value=2, max_value=6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda a: a[0] != a[1]), max_size=14),
    )
)


@settings(max_examples=60, deadline=None)
@given(arc_sets)
def test_meet_in_middle_matches_bruteforce(data):
    n, arcs = data
    d = Orientation(n, tuple(arcs))
    assert eulerian_parity_diff(d) == eulerian_parity_diff_bruteforce(d)


def test_at_examples():
    assert alon_tarsi_number(complete(2)) == 2
    assert alon_tarsi_number(cycle(4)) == 2
    assert alon_tarsi_number(cycle(5)) == 3
    assert alon_tarsi_number(star(4)) == 2


def test_at_guard():
    with pytest.raises(TooLarge):
        alon_tarsi_number(complete(6))


def test_at_witness_orientation():
    k, d = alon_tarsi_number(cycle(6), with_orientation=True)
    assert k == 2 and d.max_out_degree() == 1 and eulerian_parity_diff(d) != 0


def test_paint_examples():
    assert paint_number(complete(2)) == 2
    assert paint_number(cycle(5)) == 3
    assert paint_number(star(3)) == 2
    assert paint_number(Graph(3, [])) == 1


def test_paint_guard():
    with pytest.raises(TooLarge):
        paint_number(path(9))


def test_chain_examples():
    assert parameter_chain_check(cycle(5)).values == (3, 3, 3, 3, 3)
    assert parameter_chain_check(complete(4)).values == (4, 4, 4, 4, 4)
    c6 = parameter_chain_check(cycle(6))
    assert (c6.chi, c6.choice, c6.at, c6.degeneracy_plus_one) == (2, 2, 2, 3)
    assert c6.ok


def test_at_le_degeneracy_and_choice_le_paint_on_catalog():
    for g in connected_graph_catalog(5):
        rep = parameter_chain_check(g)
        assert rep.ok, (g.edges(), rep)
