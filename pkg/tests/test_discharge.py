import math
from fractions import Fraction

import pytest

from sqcolor.discharge import (
    STAGES,
    discharging_contradiction_check,
    find_reducible_configurations,
    revalidate,
    run_discharging,
)
from sqcolor.errors import PreconditionViolated
from sqcolor.generators import cube_plane, cycle, cycle_plane, dodecahedron_plane, gadget, gadget_plane, random_plane_c4free
from sqcolor.graph import Graph
from sqcolor.plane import rotation_from_coords


def dumbbell():
    """Two pentagons joined by a bridge."""
    left = [(math.cos(2 * math.pi * i / 5) - 2, math.sin(2 * math.pi * i / 5)) for i in range(5)]
    right = [(2 - math.cos(2 * math.pi * i / 5), math.sin(2 * math.pi * i / 5)) for i in range(5)]
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 1) % 5) for i in range(5)] + [(0, 5)]
    return rotation_from_coords(left + right, edges)


def test_dodecahedron_conservation_and_hand_ledger():
    pg = dodecahedron_plane()
    L = run_discharging(pg)
    assert list(L.snapshots) == list(STAGES)
    assert all(t == -8 for t in L.stage_totals().values())
    # hand ledger: each pentagon pays 1/5 per side, each edge forwards 1/5 to each end
    assert set(L.of("f").values()) == {Fraction(0)}
    assert set(L.of("e").values()) == {Fraction(0)}
    assert set(L.of("v").values()) == {Fraction(-2, 5)}
    assert set(L.snapshots["R1"][k] for k in L.of("f")) == {Fraction(0)}


def test_cut_edge_gets_two_fifths():
    pg = dumbbell()
    L = run_discharging(pg)
    assert L.snapshots["R1"][("e", (0, 5))] == Fraction(2, 5)
    assert L.charges[("e", (0, 5))] == 0
    assert all(t == -8 for t in L.stage_totals().values())


def test_dodecahedron_configurations():
    rep = find_reducible_configurations(dodecahedron_plane(), 10)
    assert rep.kinds()["threeVertexNoBig"] == 20


def test_subdivided_star_findings():
    # centre 0, subdivision vertices 1..12, leaves 13..24; derived by evaluating the predicates
    g = Graph(25, [(0, i) for i in range(1, 13)] + [(i, i + 12) for i in range(1, 13)])
    rep = find_reducible_configurations(g, 10)
    assert rep.kinds()["keyLemma"] == 12
    assert rep.kinds()["oneVertex"] == 12


@pytest.mark.parametrize("t", [2, 3, 4])
def test_gadget_without_keylemma(t):
    rep = find_reducible_configurations(gadget_plane(3, t), 2 * t)
    assert rep.kinds()["keyLemma"] == 0


def test_gadget_no_three_vertex_findings():
    k = find_reducible_configurations(gadget(3, 3), 5).kinds()
    assert k["threeVertexNoBig"] == 0 and k["face33"] == 0 and k["face3OffNeighbor"] == 0


def test_cycle_has_keylemma():
    rep = find_reducible_configurations(cycle(5), 10)
    assert rep.kinds()["keyLemma"] == 5
    assert all(revalidate(cycle(5), f, 10) for f in rep.findings)


def test_precondition_errors():
    with pytest.raises(PreconditionViolated):
        discharging_contradiction_check(cycle_plane(7))
    with pytest.raises(PreconditionViolated):
        run_discharging(cube_plane())


@pytest.mark.parametrize("seed", range(15))
def test_corpus_ledger_and_bounds(seed):
    pg = random_plane_c4free(30 + (seed * 37) % 271, seed)
    g = pg.graph
    L = run_discharging(pg)
    assert all(t == -8 for t in L.stage_totals().values())
    assert all(c == 0 for c in L.of("e").values())
    for v in range(g.n):
        if g.degree(v) >= 10:
            assert L.charges[("v", v)] >= Fraction(2, 5) * g.degree(v) - 4
    for i, f in enumerate(pg.faces):
        if len(f) >= 5:
            assert L.charges[("f", i)] >= Fraction(4, 5) * len(f) - 4
    if g.max_degree >= 10:
        verdict = discharging_contradiction_check(pg)
        assert verdict.ok
        assert all(revalidate(pg, f) for f in verdict.report.findings)
