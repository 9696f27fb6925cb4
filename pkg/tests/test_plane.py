import pytest

from sqcolor.errors import Disconnected, InvalidRotation
from sqcolor.generators import (
    cube_plane,
    cycle_plane,
    dodecahedron_plane,
    icosahedron_plane,
    k3_plane,
    random_plane_c4free,
    star_plane,
)
from sqcolor.graph import forbidden_cycles
from sqcolor.plane import (
    PlaneGraph,
    euler_check,
    euler_check_components,
    half_edges,
    incident_faces,
    rotation_from_coords,
    trace_faces,
)


def lengths(pg):
    return sorted(len(f) for f in pg.faces)


def test_k3_two_triangles():
    assert lengths(k3_plane()) == [3, 3]


def test_tree_single_face():
    pg = star_plane(5)
    assert lengths(pg) == [2 * pg.graph.m]


def test_cube_six_squares():
    assert lengths(cube_plane()) == [4] * 6


def test_euler_on_platonic_solids():
    for pg in (cube_plane(), dodecahedron_plane(), icosahedron_plane(), k3_plane()):
        assert euler_check(pg)


def test_single_edge_euler():
    pg = PlaneGraph.from_rotation([(1,), (0,)])
    assert len(pg.faces) == 1 and euler_check(pg)


def test_perturbed_rotation_breaks_euler():
    pg = cube_plane()
    rot = [list(r) for r in pg.rotation]
    rot[0][0], rot[0][1] = rot[0][1], rot[0][0]
    bad = PlaneGraph.from_rotation(rot)
    assert not euler_check(bad)


def test_bridge_sees_one_face_twice():
    pg = star_plane(3)
    f = incident_faces(pg, (0, 1))
    assert f[0] == f[1]


def test_triangle_edge_two_faces():
    f = incident_faces(k3_plane(), (0, 1))
    assert len(set(f)) == 2


def test_icosahedron_vertex_five_triangles():
    pg = icosahedron_plane()
    for v in range(12):
        fs = incident_faces(pg, v)
        assert len(set(fs)) == 5
        assert all(len(pg.faces[f]) == 3 for f in fs)


def test_charge_identity():
    for pg in (cube_plane(), dodecahedron_plane(), icosahedron_plane(), random_plane_c4free(60, 2)):
        g = pg.graph
        total = sum(g.degree(v) - 4 for v in range(g.n)) + sum(len(f) - 4 for f in pg.faces)
        assert total == -8


def test_face_multiset_invariant_under_relabel():
    pg = dodecahedron_plane()
    perm = list(reversed(range(pg.graph.n)))
    assert lengths(pg.relabel(perm)) == lengths(pg)


def test_bad_rotation_rejected():
    with pytest.raises(InvalidRotation):
        PlaneGraph.from_rotation([(1,), ()])


def test_disconnected_euler():
    pg = PlaneGraph.from_rotation([(1,), (0,), (3,), (2,)])
    with pytest.raises(Disconnected):
        euler_check(pg)
    assert euler_check_components(pg)


def test_trace_faces_cover_each_dart_once():
    pg = random_plane_c4free(40, 5)
    darts = [d for f in trace_faces(pg) for d in f]
    assert len(darts) == len(set(darts)) == 2 * pg.graph.m
    assert len(half_edges(pg)) == 2 * pg.graph.m


def test_c4_free_three_faces_are_isolated():
    for seed in range(10):
        pg = random_plane_c4free(50, seed)
        assert not forbidden_cycles(pg.graph, {4}, cap=4)
        seen_edges = set()
        per_vertex = {}
        for i, f in enumerate(pg.faces):
            if len(f) != 3:
                continue
            for u, v in f:
                e = (min(u, v), max(u, v))
                assert e not in seen_edges
                seen_edges.add(e)
            for v in pg.face_vertices(i):
                if pg.graph.degree(v) == 3:
                    per_vertex[v] = per_vertex.get(v, 0) + 1
        assert all(c <= 1 for c in per_vertex.values())


def test_rotation_from_coords_square_with_diagonal():
    pg = rotation_from_coords([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert lengths(pg) == [3, 3, 4]


def test_cycle_plane_two_faces():
    assert lengths(cycle_plane(7)) == [7, 7]
