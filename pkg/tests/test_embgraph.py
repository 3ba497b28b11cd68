import random

import pytest
from helpers import FIXTURES

from surflat import cutflow, intlat
from surflat.diagram import load_diagram
from surflat.embgraph import (EmbeddedGraph, TooLarge, embedded_isomorphism, graph_from_edges,
                              intersection_number, surface_dual_pair_check, tait_graphs, two_isomorphic)

TORUS_BOUQUET = EmbeddedGraph(1, [(0, 0), (0, 0)], [[0, 2, 1, 3]])
THETA = EmbeddedGraph(2, [(0, 1), (0, 1), (0, 1)], [[0, 2, 4], [5, 3, 1]])


def test_rotation_validation():
    with pytest.raises(ValueError):
        EmbeddedGraph(1, [(0, 0)], [[0]])
    with pytest.raises(ValueError):
        EmbeddedGraph(2, [(0, 1)], [[1], [0]])
    with pytest.raises(ValueError):
        EmbeddedGraph(1, [(0, 0)], [[0, 1], []])


def test_faces_and_genus():
    assert (THETA.num_faces, THETA.genus) == (3, 0)
    assert (TORUS_BOUQUET.num_faces, TORUS_BOUQUET.genus) == (1, 1)
    planar_bouquet = EmbeddedGraph(1, [(0, 0), (0, 0)], [[0, 1, 2, 3]])
    assert (planar_bouquet.num_faces, planar_bouquet.genus) == (3, 0)
    face = THETA.face_of()
    for w in THETA.facial_walks():
        assert len({face[h] for h in w}) == 1
        for h in w:
            assert THETA.vertex(THETA.face_next(h)) == THETA.vertex(h ^ 1)


def test_dual_twice_reverses_edges():
    for g in (THETA, TORUS_BOUQUET):
        dd = g.surface_dual().surface_dual()
        assert dd.genus == g.genus
        assert embedded_isomorphism(g, dd, match_labels=True) is not None
        # the dart map h -> h^1 (every edge reversed) respects the rotations
        for h in range(2 * g.num_edges):
            assert dd.rot_next(h ^ 1) == g.rot_next(h) ^ 1
    assert THETA.surface_dual().num_vertices == 3


def test_cycle_basis_are_flows():
    rng = random.Random(3)
    for _ in range(30):
        nv = rng.randint(1, 5)
        edges = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(rng.randint(nv, 8))]
        g = graph_from_edges(nv, edges)
        cb = g.cycle_basis()
        assert len(cb.vectors) == g.num_edges - g.num_vertices + g.num_components()
        B = g.boundary_matrix()
        for v, w in zip(cb.vectors, cb.walks):
            assert intlat.matvec(B, v) == [0] * nv
            assert g.face_vector(w) == list(v)


def test_intersection_torus():
    a, b = [1, 0], [0, 1]
    x = intersection_number(TORUS_BOUQUET, a, [2])
    y = intersection_number(TORUS_BOUQUET, b, [0])
    assert abs(x) == 1 and x == -y
    # a walk never meets its own push-off algebraically on an orientable surface
    assert intersection_number(TORUS_BOUQUET, a, [0]) == 0
    # planar graphs: every pairing vanishes
    for al in ([1, -1, 0], [0, 1, -1]):
        for w in ([0, 3], [2, 5]):
            assert intersection_number(THETA, al, w) == 0
    with pytest.raises(ValueError):
        intersection_number(THETA, [1, 0, 0], [0])


def test_tait_graphs_are_surface_dual():
    for p in list((FIXTURES / "surface").glob("*.txt")) + [FIXTURES / "diagrams" / "k5_2429.txt"]:
        d = load_diagram(p)
        black, white = tait_graphs(d)
        assert black.genus == white.genus == d.genus
        assert surface_dual_pair_check(black, white)


def test_two_isomorphic_flype_graphs():
    for a in sorted((FIXTURES / "flype").glob("*_a.txt")):
        g1 = tait_graphs(load_diagram(a))[0]
        g2 = tait_graphs(load_diagram(a.with_name(a.name.replace("_a", "_b"))))[0]
        g1w = tait_graphs(load_diagram(a))[1]
        # colour normalisation may swap the Tait graphs of a flyped diagram
        assert two_isomorphic(g1, g2) or two_isomorphic(g1w, g2)


def test_two_isomorphic_implies_isometric_flows():
    tri = graph_from_edges(3, [(0, 1), (1, 2), (2, 0)])
    triple = graph_from_edges(2, [(0, 1), (0, 1), (0, 1)])
    assert not two_isomorphic(tri, triple)
    # a path is 2-isomorphic to any forest with the same edge count
    assert two_isomorphic(graph_from_edges(3, [(0, 1), (1, 2)]), graph_from_edges(3, [(0, 1), (0, 2)]))
    c4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    c4b = graph_from_edges(4, [(0, 1), (2, 1), (2, 3), (0, 3)])
    assert two_isomorphic(c4, c4b)
    g1 = cutflow.flow_lattice(c4).gram
    g2 = cutflow.flow_lattice(c4b).gram
    assert intlat.unimodular_congruent(g1, g2).status == "yes"
    with pytest.raises(TooLarge):
        big = graph_from_edges(2, [(0, 1)] * 12)
        two_isomorphic(big, big)


def test_text_export():
    assert THETA.to_text().splitlines()[0] == "edge 0 0 1"
    assert THETA.to_dict()["rotation"] == [[0, 2, 4], [5, 3, 1]]
