import pytest
from helpers import FIXTURES, laplacian_tree_count

from surflat import cutflow, intlat
from surflat.diagram import load_diagram
from surflat.embgraph import EmbeddedGraph, graph_from_edges, tait_graphs

TORUS_BOUQUET = EmbeddedGraph(1, [(0, 0), (0, 0)], [[0, 2, 1, 3]])


def k5():
    d = load_diagram(FIXTURES / "diagrams" / "k5_2429.txt")
    return d, tait_graphs(d)


def test_flow_and_cut_are_orthogonal_complements():
    g = graph_from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (1, 3)])
    F, C = cutflow.flow_lattice(g), cutflow.cut_lattice(g)
    assert F.rank + C.rank == g.num_edges
    for f in F.basis:
        for c in C.basis:
            assert sum(a * b for a, b in zip(f, c)) == 0
    # same determinant: the edge lattice is unimodular and both are primitive
    assert intlat.det(F.gram) == intlat.det(C.gram) == cutflow.kirchhoff_tree_count(g) == 16


def test_bouquet_on_torus():
    F = cutflow.flow_lattice(TORUS_BOUQUET)
    assert F.gram == intlat.identity(2)
    assert cutflow.restricted_flow_lattice(TORUS_BOUQUET).rank == 0
    imap = cutflow.inclusion_map(TORUS_BOUQUET)
    assert intlat.invariant_factors(imap.matrix) == [1, 1]


def test_k5_2429_lattices():
    d, (black, white) = k5()
    F0 = cutflow.restricted_flow_lattice(black)
    assert F0.rank == 3
    assert intlat.unimodular_congruent(F0.gram, [[2, 1, 0], [1, 3, -1], [0, -1, 2]]).status == "yes"
    # the restricted flows of one graph are the cuts of the other
    assert intlat.same_lattice(F0.basis, cutflow.cut_lattice(white).basis)
    assert cutflow.kirchhoff_tree_count(white) == 8
    assert cutflow.kirchhoff_tree_count(black) == 1


def test_duality_reports_on_fixtures():
    for p in sorted((FIXTURES / "surface").glob("*.txt")):
        d = load_diagram(p)
        for rep in cutflow.verify_duality(d):
            assert rep.ok, (p.stem, rep.to_dict())
            assert rep.ranks["flow0"] == rep.ranks["dual_cut"]
            assert rep.ranks["flow"] - rep.ranks["flow0"] == 2 * d.genus


def test_duality_detects_a_wrong_pair():
    # a graph paired with something that is not its dual
    _, (black, white) = k5()
    bad = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert not intlat.same_lattice(cutflow.restricted_flow_lattice(black).basis, cutflow.cut_lattice(bad).basis)


@pytest.mark.parametrize("edges, nv", [
    ([(0, 1), (1, 2), (2, 0)], 3),
    ([(0, 1)] * 4, 2),
    ([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)], 4),
    ([(0, 0), (0, 1), (1, 1)], 2),
])
def test_kirchhoff_small(edges, nv):
    g = graph_from_edges(nv, edges)
    gram = cutflow.flow_lattice(g).gram
    det = intlat.det(gram) if gram else 1
    assert det == cutflow.kirchhoff_tree_count(g) == laplacian_tree_count(nv, edges)


def test_tree_cotree_sizes():
    for p in sorted((FIXTURES / "surface").glob("g2_*.txt"))[:3]:
        g = tait_graphs(load_diagram(p))[0]
        tree, cotree, left = cutflow.tree_cotree(g)
        assert len(tree) == g.num_vertices - 1
        assert len(left) == 2 * g.genus
        assert len(tree) + len(cotree) + len(left) == g.num_edges
