"""Graph substrate: cliques, f-vectors, unit spheres, duals, glue, formats."""

import json
import random

import pytest

from chromacut.constructions import (capped_cube, complete_graph, cross_polytope, cycle_graph,
                                     flat_torus, icosahedron, moebius, octahedron,
                                     projective_plane, wheel)
from chromacut.graphs import SimplicialGraph, dual_graph, glue, subdivide_edge


def test_octahedron_counts():
    octa = octahedron()
    assert len(octa.simplices(2)) == 8
    assert octa.f_vector().counts == (6, 12, 8)
    assert octa.euler_characteristic() == 2


def test_square_has_no_triangles():
    assert cycle_graph(4).simplices(2) == []


def test_complete_graph_top_simplex():
    k4 = complete_graph(4)
    assert k4.simplices(3) == [(0, 1, 2, 3)]


def test_simplices_sorted_and_ascending():
    g = icosahedron()
    for k in range(3):
        simp = g.simplices(k)
        assert simp == sorted(simp)
        assert all(list(s) == sorted(s) for s in simp)
        assert len(set(simp)) == len(simp)


def test_cache_invalidation_on_mutation():
    g = cycle_graph(4)
    assert g.simplices(2) == []
    g.add_edge(0, 2)
    assert len(g.simplices(2)) == 2


def test_moebius_f_vector_matches_paper():
    assert moebius().f_vector().counts == (7, 14, 7)
    assert moebius().euler_characteristic() == 0


def test_projective_plane_euler():
    assert projective_plane().euler_characteristic() == 1


def test_single_vertex_f_vector():
    g = SimplicialGraph([3])
    assert g.f_vector().counts == (1,)


def test_unit_sphere_octahedron_is_c4():
    octa = octahedron()
    for v in octa.vertices:
        s = octa.unit_sphere(v)
        assert v not in s
        assert len(s) == octa.degree(v)
        assert s.is_cycle_graph(min_len=4) and len(s) == 4


def test_unit_sphere_icosahedron_is_c5():
    ico = icosahedron()
    for v in ico.vertices:
        assert ico.unit_sphere(v).is_cycle_graph(min_len=4)
        assert len(ico.unit_sphere(v)) == 5


def test_unit_sphere_wheel_hub():
    w = wheel(5)
    assert w.unit_sphere(5).is_cycle_graph(min_len=4)


def test_unit_sphere_unknown_vertex():
    with pytest.raises(KeyError):
        octahedron().unit_sphere(99)


def test_dual_octahedron_is_cube():
    dual, cells = dual_graph(octahedron())
    assert len(dual) == 8 and dual.edge_count() == 12
    assert all(dual.degree(v) == 3 for v in dual.vertices)
    assert len(cells) == 8


def test_dual_16cell_is_tesseract():
    dual, _ = dual_graph(cross_polytope(4))
    assert len(dual) == 16 and dual.edge_count() == 32
    assert all(dual.degree(v) == 4 for v in dual.vertices)
    assert dual.simplices(2) == []


def test_dual_k4_single_vertex():
    dual, cells = dual_graph(complete_graph(4))
    assert len(dual) == 1 and dual.edge_count() == 0
    assert cells == [(0, 1, 2, 3)]


def test_dual_triangle_free_for_3d_geometric():
    from chromacut.constructions import cone, self_cobordism

    hosts = (cone(octahedron()).graph, cone(icosahedron()).graph,
             self_cobordism(octahedron()).graph, self_cobordism(flat_torus(4, 4)).graph)
    for host in hosts:
        dual, _ = dual_graph(host)
        assert dual.simplices(2) == []


def test_induced_matches_unit_sphere():
    octa = octahedron()
    assert octa.induced(octa.neighbors(0)) == octa.unit_sphere(0)


def test_glue_projective_plane():
    p = glue(wheel(7), moebius(), {v: v for v in range(7)})
    assert len(p) == 8
    assert p.euler_characteristic() == 1


def test_glue_triangle_idempotent():
    t = complete_graph(3)
    assert glue(t, t, {0: 0, 1: 1, 2: 2}) == t


def test_glue_rejects_non_bijection():
    with pytest.raises(ValueError):
        glue(complete_graph(3), complete_graph(3), {0: 0, 1: 0})


def test_handshake_generalization():
    # sum over vertices of the k-simplex count of the unit sphere equals
    # (k+2) times the number of (k+1)-simplices
    for g in (octahedron(), icosahedron(), moebius(), cross_polytope(4), capped_cube()):
        fv = g.f_vector()
        for k in range(len(fv.counts) - 1):
            total = sum(len(g.unit_sphere(x).simplices(k)) for x in g.vertices)
            assert total == fv[k + 1] * (k + 2)


def test_f_vector_isomorphism_invariant():
    rng = random.Random(3)
    g = icosahedron()
    perm = list(g.vertices)
    rng.shuffle(perm)
    relabel = dict(zip(g.vertices, perm))
    h = SimplicialGraph(perm, [(relabel[a], relabel[b]) for a, b in g.edges()])
    assert h.f_vector().counts == g.f_vector().counts


def test_canonical_json_round_trip():
    g = flat_torus(4, 5)
    doc = g.canonical_json()
    assert SimplicialGraph.from_json(doc).canonical_json() == doc
    parsed = json.loads(doc)
    assert parsed["vertices"] == sorted(parsed["vertices"])
    assert parsed["edges"] == sorted(parsed["edges"])
    assert all(a < b for a, b in parsed["edges"])


def test_from_json_requires_fields():
    with pytest.raises(ValueError):
        SimplicialGraph.from_json('{"vertices": [1, 2]}')


def test_subdivide_edge_degrees():
    octa = octahedron()
    v = subdivide_edge(octa, (0, 2))
    assert not octa.has_edge(0, 2)
    assert octa.degree(v) == 4  # both ends plus the two tips
    assert octa.euler_characteristic() == 2


def test_self_loop_rejected():
    g = SimplicialGraph()
    with pytest.raises(ValueError):
        g.add_edge(1, 1)
