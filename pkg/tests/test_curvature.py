"""Curvature, Gauss-Bonnet, Poincare-Hopf, edge degrees, and the odd set."""

import random
from fractions import Fraction

import pytest

from chromacut.constructions import (capped_cube, cone, cross_polytope, cycle_graph,
                                     fisk_torus, flat_torus, icosahedron, moebius,
                                     octahedron, projective_plane, self_cobordism)
from chromacut.curvature import (boundary_distances, curvature_is_color_index_expectation,
                                 edge_link, edge_report, gauss_bonnet, index_sum,
                                 odd_edge_set, phi, vertex_curvature)
from chromacut.graphs import SimplicialGraph


CORPUS = [octahedron(), icosahedron(), cross_polytope(4), flat_torus(4, 4),
          flat_torus(5, 5), flat_torus(6, 6), fisk_torus(), moebius(),
          projective_plane(), capped_cube(), cone(octahedron()).graph,
          cone(icosahedron()).graph, self_cobordism(octahedron()).graph]


def test_icosahedron_vertex_curvature():
    assert vertex_curvature(icosahedron(), 0) == Fraction(1, 6)


def test_16cell_vertex_curvature_zero():
    # unit sphere is an octahedron: 1 - 6/2 + 12/3 - 8/4 = 0
    assert vertex_curvature(cross_polytope(4), 0) == 0


def test_interior_vertices_of_3d_hosts_have_zero_curvature():
    for host in (cone(octahedron()), cone(icosahedron()), self_cobordism(octahedron()),
                 self_cobordism(flat_torus(4, 4))):
        interior = set(host.graph.vertices) - host.designated_boundary
        for v in interior:
            assert vertex_curvature(host.graph, v) == 0


def test_gauss_bonnet_corpus_exact():
    for g in CORPUS:
        total, chi, ok = gauss_bonnet(g)
        assert ok and total == chi


def test_gauss_bonnet_values():
    assert gauss_bonnet(icosahedron())[0] == 2
    assert gauss_bonnet(moebius())[0] == 0
    assert gauss_bonnet(projective_plane())[0] == 1


def test_poincare_hopf_rejects_non_injective():
    # cross_polytope(2) is C_4 with edges (0,2),(0,3),(1,2),(1,3); the values
    # (0,1,0,1) collide across the edge (0,2)
    with pytest.raises(ValueError):
        index_sum(cross_polytope(2), {0: 0, 1: 1, 2: 0, 3: 1})


def test_poincare_hopf_octahedron():
    g = octahedron()
    f = {v: v for v in g.vertices}
    assert index_sum(g, f) == 2


def test_poincare_hopf_random_functions_give_euler():
    rng = random.Random(11)
    for g in (octahedron(), moebius(), flat_torus(4, 4), projective_plane()):
        chi = g.euler_characteristic()
        verts = g.vertices
        for _ in range(25):
            values = list(range(len(verts)))
            rng.shuffle(values)
            f = dict(zip(verts, values))
            assert index_sum(g, f) == chi


def test_curvature_is_color_index_expectation():
    assert curvature_is_color_index_expectation(octahedron(), 3)
    assert curvature_is_color_index_expectation(cycle_graph(5), 3)
    assert curvature_is_color_index_expectation(SimplicialGraph(range(3), [(0, 1), (1, 2), (0, 2)]), 3)


def test_color_index_budget_guard():
    with pytest.raises(ValueError):
        curvature_is_color_index_expectation(flat_torus(6, 6), 4, budget=1000)


def test_edge_report_cone_octahedron():
    host = cone(octahedron())
    g = host.graph
    rep = edge_report(g, (0, 6), boundary=host.designated_boundary)
    assert rep.kind == "interior" and rep.degree == 4
    assert rep.ricci == 1 - Fraction(4, 6)
    assert rep.distance_to_boundary == 1
    surface = edge_report(g, (0, 2), boundary=host.designated_boundary)
    assert surface.kind == "boundary"
    assert surface.distance_to_boundary == 0


def test_edge_degree_equals_tetra_count():
    # oracle: brute-force count of 4-cliques containing the edge
    host = cone(icosahedron()).graph
    tetras = host.simplices(3)
    for e in host.edges():
        oracle = sum(1 for t in tetras if e[0] in t and e[1] in t)
        assert edge_link(host, e).edge_count() == oracle


def test_interior_link_is_cycle_of_length_degree():
    host = cone(icosahedron()).graph
    for e in host.edges():
        link = edge_link(host, e)
        if link.is_cycle_graph(min_len=3):
            assert len(link) == link.edge_count()
        else:
            assert link.is_path_graph()


def test_odd_edge_set_cone_octahedron_empty():
    host = cone(octahedron())
    assert odd_edge_set(host.graph) == set()
    assert phi(host.graph, host.designated_boundary) == 0


def test_odd_edge_set_cone_icosahedron():
    host = cone(icosahedron())
    odd = odd_edge_set(host.graph)
    assert odd == {(v, 12) for v in range(12)}
    assert phi(host.graph, host.designated_boundary) == 12


def test_odd_edge_requires_3_dimensional():
    with pytest.raises(ValueError):
        odd_edge_set(octahedron())


def test_parity_lemma_interior_vertices():
    # the edge degree of (v,w) is the degree of w inside the unit sphere of
    # v, so the degrees around an interior vertex sum to twice the edge
    # count of that sphere and are in particular even
    for host in (cone(octahedron()), cone(icosahedron()), self_cobordism(octahedron())):
        g = host.graph
        for v in set(g.vertices) - host.designated_boundary:
            sphere = g.unit_sphere(v)
            degs = [len(g.neighbors(v) & g.neighbors(w)) for w in g.neighbors(v)]
            assert sum(degs) % 2 == 0
            assert sum(degs) == 2 * sphere.edge_count()


def test_boundary_distances():
    host = self_cobordism(octahedron())
    dist = boundary_distances(host.graph, host.designated_boundary)
    assert all(dist[v] == 0 for v in host.designated_boundary)
    middle = set(host.graph.vertices) - host.designated_boundary
    assert all(dist[v] == 1 for v in middle)
