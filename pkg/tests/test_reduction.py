import pytest

from sqcolor.errors import AdjacentSuppressible, UnclassifiableEdge
from sqcolor.generators import random_plane_c4free
from sqcolor.graph import Graph, classify_vertices, default_threshold
from sqcolor.plane import PlaneGraph, rotation_from_coords
from sqcolor.reduction import (
    build_g_double_prime,
    build_g_prime,
    build_g_triple_prime,
    check_region_decomposition,
    classify_edge_types,
    config_pp_diagnostic,
    digon_runs,
    fewedges_diagnostic,
    find_regions,
    first_red_diagnostic,
    half_edge_diagnostics,
    loop_heavy_fixture,
    notriangle_diagnostic,
    provenance_round_trip,
    region_fixture,
    smallfaces_diagnostic,
    smallfacesaux_fixture,
    type3_blocks,
)


def pipeline(pg, beta):
    g = pg.graph
    vc = classify_vertices(g, beta)
    gp = build_g_prime(pg, vc)
    return g, vc, gp


def test_contraction_basic():
    # big hub 0 with leaves, x=1 in S1 hanging off it through a triangle-free path
    pg = rotation_from_coords([(0, 0), (1, 0), (2, 0), (-1, 0), (0, 1), (0, -1)], [(0, 1), (1, 2), (0, 3), (0, 4), (0, 5)])
    g, vc, gp = pipeline(pg, 4)
    assert 1 not in gp.vertices and (0, 1) in gp.contracted
    assert provenance_round_trip(gp, g)


def test_suppression_basic():
    # path 0-1-2 with all small: 1 is suppressed
    pg = rotation_from_coords([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])
    g, vc, gp = pipeline(pg, 5)
    assert gp.suppressed == {1}
    (e,) = gp.edges.values()
    assert sorted(e.ends) == [0, 2] and e.path in ((0, 1, 2), (2, 1, 0))


def test_adjacent_suppressible_rejected():
    pg = rotation_from_coords([(0, 0), (1, 0), (2, 0), (3, 0)], [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(AdjacentSuppressible) as exc:
        pipeline(pg, 5)
    assert exc.value.edge == (1, 2)


def test_region_fixture_hand_trace():
    pg, beta = region_fixture()
    g, vc, gp = pipeline(pg, beta)
    assert vc.big == frozenset({0, 1})
    assert sorted(gp.vertices) == [0, 1, 17]
    assert gp.multiplicity(0, 1) == 5
    types = classify_edge_types(gp, g, vc)
    assert sorted(t.type for t in types.values()) == [1, 1, 6, 6, 6, 6, 6]
    six = [t for t in types.values() if t.type == 6]
    assert all(set(t.anchors) == {"x", "y", "x'"} for t in six)
    gpp = build_g_double_prime(gp)
    regions = find_regions(gpp, vc, gp)
    assert len(regions) == 1
    r = regions[0]
    assert (r.b1, r.b2, r.size) == (0, 1, 4)
    assert r.B1 == frozenset({2, 5, 8, 11, 14})
    assert r.B2 == frozenset({4, 7, 10, 13, 16})
    assert r.D == frozenset({3, 6, 9, 12, 15})
    assert check_region_decomposition(r, g) == []
    assert fewedges_diagnostic(r, g) == []
    sub, back = r.subgraph(g)
    assert sub.n == 17 and sorted(back) == list(range(17))
    for a, b in zip(r.faces, r.faces[1:]):
        assert {h[0] for h in a} & {h[0] for h in b}
    res = build_g_triple_prime(gpp)
    assert len(res.deleted) == 4 == res.initial_two_faces
    assert res.graph.two_faces() == []


def test_smallfacesaux_drawn_hand_trace():
    pg, beta = smallfacesaux_fixture()
    g, vc, gp = pipeline(pg, beta)
    assert vc.big == frozenset({0})
    assert gp.suppressed == {3, 5, 7, 9, 11}
    assert sorted(x for _, x in gp.contracted) == [2, 4, 6, 8, 10, 12, 13, 14]
    assert sorted(gp.vertices) == [0, 1, 15]
    assert len(gp.loops()) == 1 and gp.multiplicity(0, 1) == 6
    types = classify_edge_types(gp, g, vc)
    assert sorted(t.type for t in types.values()) == [1, 2, 3, 3, 3, 3, 3, 5]
    assert all(types[e].type == 5 for e in gp.loops())
    gpp = build_g_double_prime(gp)
    assert gpp.loops() == [] and gpp.multiplicity(0, 1) == 6
    assert digon_runs(gpp) == [(0, 1, 5)]
    assert smallfaces_diagnostic(gpp, vc) == []
    assert type3_blocks(gpp, types, vc) == [(0, 1, 5)]
    assert find_regions(gpp, vc, gp) == []  # w is small
    res = build_g_triple_prime(gpp)
    assert len(res.deleted) == 5 and len(res.graph.edges) == 2
    assert half_edge_diagnostics(gp).ok
    assert notriangle_diagnostic(g) == [(12, 13, 0)]


def test_loop_heavy_violates_degree_ratio():
    pg, beta = loop_heavy_fixture()
    g, vc, gp = pipeline(pg, beta)
    rep = half_edge_diagnostics(gp)
    assert (0, 9, 1) in rep.degree_violations
    assert rep.ratio(0, gp) == 9
    gpp = build_g_double_prime(gp)
    assert gpp.degree(0) == 1


def test_loop_only_vertex_becomes_isolated():
    # hub 0 carrying two triangles: both collapse to loops at 0
    pg = rotation_from_coords([(0, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)], [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    g, vc, gp = pipeline(pg, 4)
    assert sorted(gp.vertices) == [0] and len(gp.loops()) == 2
    gpp = build_g_double_prime(gp)
    assert gpp.degree(0) == 0


def test_no_loops_identity():
    pg, beta = region_fixture()
    g, vc, gp = pipeline(pg, beta)
    gpp = build_g_double_prime(gp)
    assert {e: (x.ends, x.path) for e, x in gpp.edges.items()} == {e: (x.ends, x.path) for e, x in gp.edges.items()}


def test_parallel_edges_separated_by_vertices_kept():
    # two type-6 routes, one above and one below the axis, with u on the axis between them and z outside
    coords = [(0, 0), (10, 0), (2, 3), (5, 3), (8, 3), (2, -3), (5, -3), (8, -3), (5, 0), (5, 8), (-2, 0), (12, 0)]
    edges = [(0, 2), (2, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 7), (7, 1), (0, 8), (8, 1), (0, 9), (9, 1), (0, 10), (1, 11)]
    pg = rotation_from_coords(coords, edges)
    g, vc, gp = pipeline(pg, 4)
    assert gp.multiplicity(0, 1) >= 2
    gpp = build_g_double_prime(gp)
    res = build_g_triple_prime(gpp)
    assert res.deleted == []
    assert res.graph.multiplicity(0, 1) == gp.multiplicity(0, 1)


def test_unclassifiable_surfaces():
    pg, beta = region_fixture()
    g, vc, gp = pipeline(pg, beta)
    eid = max(gp.edges)
    gp.edges[eid].path = (0, 2, 3, 4, 5, 1)
    with pytest.raises(UnclassifiableEdge):
        classify_edge_types(gp, g, vc)


def test_corpus_round_trip_and_types():
    in_domain = 0
    for seed in range(60):
        pg = random_plane_c4free(30 + (seed * 37) % 271, seed)
        g = pg.graph
        vc = classify_vertices(g, default_threshold(g))
        try:
            gp = build_g_prime(pg, vc)
        except AdjacentSuppressible:
            continue
        in_domain += 1
        assert provenance_round_trip(gp, g)
        assert gp.euler_ok()
        types = classify_edge_types(gp, g, vc)
        for eid, t in types.items():
            e = gp.edges[eid]
            a, b = e.ends
            if a in vc.small and b in vc.small:
                assert t.type in (1, 2, 3, 4)
            if a in vc.big and b in vc.big:
                assert t.type in (1, 5, 6)
        gpp = build_g_double_prime(gp)
        res = build_g_triple_prime(gpp)
        assert len(res.deleted) == res.initial_two_faces
        for r in find_regions(gpp, vc, gp):
            assert check_region_decomposition(r, g) == []
        first_red_diagnostic(g, vc)
        config_pp_diagnostic(g, vc)
    assert in_domain > 0
