import json

import pytest
from helpers import FIXTURES, fox_alexander, is_monomial, kauffman_bracket

from surflat.diagram import (BoundaryNotFour, DiagramError, NotADisc, NotCheckerboardColourable, ParseError,
                             TangleSpec, alternating_diagram, check_disc, diagram_isomorphism, from_pd,
                             load_diagram, mutate, parse_diagram)
from surflat.embgraph import EmbeddedGraph, tait_graphs
from surflat.glform import mock_seifert

TREFOIL = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
FIGURE8 = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]


def test_parse_text_and_json_agree():
    text = "# comment\ncrossing a 1 5 2 4\ncrossing b 3 1 4 6  # trailing\ncrossing c 5 3 6 2\n"
    d1 = parse_diagram(text)
    d2 = parse_diagram(json.dumps({"name": "t", "crossings": [{"id": "a", "slots": [1, 5, 2, 4]},
                                                               {"id": "b", "slots": [3, 1, 4, 6]},
                                                               {"id": "c", "slots": [5, 3, 6, 2]}]}),
                       fmt="json")
    assert d1.pd_code() == d2.pd_code() == TREFOIL
    assert d2.name == "t"
    assert parse_diagram(d1.to_text()).pd_code() == TREFOIL
    bare = parse_diagram(json.dumps(TREFOIL), fmt="json")
    assert [c.id for c in bare.crossings] == ["1", "2", "3"]


@pytest.mark.parametrize("text, msg", [
    ("crossing 1 1 2 3\n", "needs 4 arcs"),
    ("crossing 1 1 2 x 4\n", "positive integers"),
    ("crossing 1 1 2 0 4\n", "positive integers"),
    ("cross 1 1 2 3 4\n", "expected 'crossing"),
    ("", "no crossings"),
    ("crossing 1 1 2 1 3\n", "arc 2 occurs 1 time"),
    ("crossing 1 1 5 2 4\ncrossing 1 3 1 4 6\ncrossing 3 5 3 6 2\n", "duplicate"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_diagram(text)


def test_json_errors():
    with pytest.raises(ParseError):
        parse_diagram("{not json", fmt="json")
    with pytest.raises(ParseError):
        parse_diagram(json.dumps({"crossings": [{"id": 1, "slots": [1, 2, 3]}]}), fmt="json")


def test_inconsistent_orientation_and_split():
    # slot 0 must be an incoming under-strand on every component
    with pytest.raises(ParseError, match="slot 0"):
        from_pd([[2, 4, 1, 5], [3, 1, 4, 6], [5, 3, 6, 2]])
    with pytest.raises(DiagramError, match="split"):
        from_pd([[1, 1, 2, 2], [3, 3, 4, 4]])


def test_trefoil_basics():
    d = from_pd(TREFOIL)
    assert (d.n, d.genus, d.num_faces, len(d.components)) == (3, 0, 5, 1)
    assert d.signs == (1, 1, 1) and d.writhe() == 3
    assert d.is_alternating() and d.is_reduced()
    c = d.checkerboard_colour()
    cls = d.classify_crossings(c)
    assert {x.colour_type for x in cls} == {"A"}
    assert {x.orientation_type for x in cls} == {"II"}
    assert d.correction_terms(c) == (3, 0)
    black, white = tait_graphs(d, c)
    assert (black.num_vertices, black.num_edges) == (3, 3)
    assert (white.num_vertices, white.num_edges) == (2, 3)


def test_mirror_flips_signs_and_types():
    d = from_pd(TREFOIL)
    m = d.mirror()
    assert m.writhe() == -3
    assert m.is_alternating()
    assert diagram_isomorphism(m.mirror(), d) is not None
    assert mock_seifert(d).signature == -mock_seifert(m).signature


def test_non_colourable_and_nugatory():
    v = from_pd([[1, 2, 1, 2]])
    assert v.genus == 1
    assert not v.is_colourable()
    with pytest.raises(NotCheckerboardColourable):
        v.checkerboard_colour()
    assert v.nugatory_crossings() == []
    kink = from_pd([[1, 1, 2, 2]])
    assert kink.nugatory_crossings() == ["1"]
    assert not kink.is_reduced()


def test_opposite_corners_on_torus_are_not_nugatory():
    # every crossing of the running example has two opposite corners in one face
    d = load_diagram(FIXTURES / "diagrams" / "k5_2429.txt")
    c = d.checkerboard_colour()
    assert all(d.corner_face(i, 1) == d.corner_face(i, 3) for i in range(d.n))
    assert d.nugatory_crossings() == [] and d.is_reduced(c)


def test_nugatory_matches_tait_bridges():
    # a crossing is nugatory exactly when its edge is a bridge of a Tait graph
    def bridges(g):
        out = set()
        for e in range(g.num_edges):
            rest = [x for k, x in enumerate(g.edges) if k != e]
            parent = list(range(g.num_vertices))

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for a, b in rest:
                parent[find(a)] = find(b)
            if len({find(v) for v in range(g.num_vertices)}) > 1:
                out.add(g.labels[e])
        return out

    graphs = [EmbeddedGraph(2, [(0, 1), (0, 1), (1, 1)], [[0, 2], [3, 1, 4, 5]]),
              EmbeddedGraph(3, [(0, 1), (1, 2), (0, 1)], [[0, 4], [1, 5, 2], [3]]),
              EmbeddedGraph(1, [(0, 0), (0, 0), (0, 0)], [[0, 2, 1, 4, 3, 5]])]
    for p in sorted((FIXTURES / "surface").glob("*.txt"))[:6]:
        d = load_diagram(p)
        graphs.append(tait_graphs(d)[0])
    for g in graphs:
        d = alternating_diagram(g)
        black, white = tait_graphs(d)
        assert set(d.nugatory_crossings()) == bridges(black) | bridges(white)


def test_alternating_diagram_round_trip():
    # links are skipped: the rebuilt diagram may orient a component the other way
    for p in sorted((FIXTURES / "surface").glob("g*_[0-9].txt")):
        d = load_diagram(p)
        if not d.is_alternating() or len(d.components) > 1:
            continue
        black = tait_graphs(d)[0]
        again = alternating_diagram(black)
        assert again.is_alternating() and again.genus == d.genus
        assert diagram_isomorphism(again, d) is not None or diagram_isomorphism(again.mirror(), d) is not None


@pytest.mark.parametrize("name, det, alex", [
    ("3_1", 3, (1, -1, 1)), ("4_1", 5, (1, -3, 1)), ("5_1", 5, (1, -1, 1, -1, 1)), ("5_2", 7, (2, -3, 2)),
    ("6_1", 9, (2, -5, 2)), ("6_2", 11, (1, -3, 3, -3, 1)), ("6_3", 13, (1, -3, 5, -3, 1)),
])
def test_classical_fixtures_against_oracles(name, det, alex):
    d = load_diagram(FIXTURES / "classical" / f"{name}.txt")
    assert fox_alexander(d) == alex
    assert abs(sum(c * (-1) ** k for k, c in enumerate(alex))) == det
    assert mock_seifert(d, None, "b").determinant == det
    assert not is_monomial(kauffman_bracket(d))


def test_crossing_change_keeps_shadow():
    d = from_pd(FIGURE8)
    x = d.crossing_changed(["1"])
    assert not x.is_alternating()
    assert x.num_faces == d.num_faces
    assert x.signs[0] == -d.signs[0]
    assert x.crossing_changed(["1"]).signs == d.signs


# -- mutation ------------------------------------------------------------

def kt():
    d = load_diagram(FIXTURES / "mutation" / "kinoshita_terasaka.txt")
    return d, TangleSpec.parse((FIXTURES / "mutation" / "kinoshita_terasaka.tangle").read_text())


def test_tangle_spec_parse():
    s = TangleSpec.parse("crossings=3,4,5 boundary=a7,a9,a12,a2 involution=h")
    assert s == TangleSpec(("3", "4", "5"), (7, 9, 12, 2), "h")
    assert TangleSpec.parse("crossings=1 boundary=1,2,3,4").involution == "pi"
    with pytest.raises(ValueError):
        TangleSpec.parse("boundary=1,2,3,4")
    with pytest.raises(ValueError):
        TangleSpec(("1",), (1, 2, 3, 4), "z")


def test_kinoshita_terasaka_conway_pair():
    d, spec = kt()
    assert d.n == 11 and len(d.components) == 1
    m = mutate(d, spec)
    assert diagram_isomorphism(d, m) is None
    assert fox_alexander(d) == fox_alexander(m) == (1,)
    kb1, kb2 = kauffman_bracket(d), kauffman_bracket(m)
    assert not is_monomial(kb1)
    assert (kb1 - kb2).expand() == 0


def test_mutation_is_an_involution_up_to_isomorphism():
    d, spec = kt()
    for inv in ("pi", "h", "v"):
        s = TangleSpec(spec.crossings, spec.boundary, inv)
        m, arc_map = mutate(d, s, return_map=True)
        assert m.n == d.n and m.genus == d.genus and m.writhe() == d.writhe()
        assert arc_map


def test_mutation_errors():
    d, spec = kt()
    with pytest.raises(BoundaryNotFour):
        mutate(d, TangleSpec(spec.crossings[:2], spec.boundary, "pi"))
    with pytest.raises(NotADisc):
        b = spec.boundary
        check_disc(d, TangleSpec(spec.crossings, (b[0], b[2], b[1], b[3]), "pi"))
    with pytest.raises(DiagramError):
        mutate(d, TangleSpec(("nope",), spec.boundary, "pi"))
    # a tangle around a handle is not a disc
    t = load_diagram(FIXTURES / "diagrams" / "k5_2429.txt")
    ids = ("2", "3", "4")
    inside = {t.index(c) for c in ids}
    bd = [a for a, (x, y) in sorted(t.arc_ends.items()) if (x // 4 in inside) != (y // 4 in inside)]
    if len(bd) == 4:
        import itertools
        for perm in itertools.permutations(bd[1:]):
            with pytest.raises(NotADisc):
                check_disc(t, TangleSpec(ids, (bd[0],) + perm, "pi"))
