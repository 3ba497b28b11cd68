import pytest
from helpers import FIXTURES, fox_alexander

from surflat import glform, intlat
from surflat.diagram import from_pd, load_diagram


def alternating_fixtures():
    for p in sorted((FIXTURES / "surface").glob("*.txt")) + sorted((FIXTURES / "classical").glob("*.txt")):
        d = load_diagram(p)
        if d.is_alternating():
            yield d


def test_running_example_exact():
    d = load_diagram(FIXTURES / "diagrams" / "k5_2429.txt")
    c = d.checkerboard_colour()
    gw = glform.mock_seifert(d, c, "w")
    # entry for entry, in the fundamental cycle basis of the white graph
    assert gw.A == [[-3, 0], [2, -3]]
    assert gw.S == [[-3, 1], [1, -3]] and gw.X == [[0, -1], [1, 0]]
    gb = glform.mock_seifert(d, c, "b")
    assert gb.S == intlat.identity(5)
    assert gb.signature == 4 and gw.signature == 2
    assert gb.alexander == (9, 14, 9) and gw.alexander == (9, -14, 9)


def test_classical_alexander_is_determinant():
    # on the sphere X vanishes, so tA - A^T = (t - 1) S up to sign
    for p in sorted((FIXTURES / "classical").glob("*.txt")):
        d = load_diagram(p)
        gb = glform.mock_seifert(d, None, "b")
        assert not any(any(r) for r in gb.X)
        det = abs(sum(c * (-1) ** k for k, c in enumerate(fox_alexander(d))))
        assert gb.alexander == (det,)


def test_black_and_white_signatures_agree_on_sphere():
    for p in sorted((FIXTURES / "classical").glob("*.txt")):
        d = load_diagram(p)
        assert glform.link_signature(d, None, "b") == glform.link_signature(d, None, "w")


def test_mirror_negates_signature():
    # switching every crossing swaps the crossing types, so the colours trade places
    for d in alternating_fixtures():
        m = d.mirror()
        assert glform.link_signature(m, None, "b") == -glform.link_signature(d, None, "w"), d.name
        assert glform.link_signature(m, None, "w") == -glform.link_signature(d, None, "b"), d.name


def test_trefoil_signature():
    d = from_pd([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]])
    assert glform.link_signature(d) == -2
    assert glform.mock_seifert(d).determinant == 3


def test_intersection_form_antisymmetric():
    for d in alternating_fixtures():
        for col in "bw":
            gl = glform.mock_seifert(d, None, col)
            assert gl.X == [[-x for x in r] for r in intlat.transpose(gl.X)]
            assert gl.S == intlat.transpose(gl.S)


def test_change_basis_keeps_invariants():
    d = load_diagram(FIXTURES / "genus2" / "k6_90101.txt")
    gl = glform.mock_seifert(d, None, "b")
    n = gl.size
    P = intlat.identity(n)
    P[0][1] = 1
    P[2][0] = -2
    new = glform.change_basis(gl, P)
    assert new.determinant == gl.determinant
    assert new.alexander == gl.alexander
    assert new.signature == gl.signature
    back = glform.in_basis(new, gl.basis_vectors)
    assert back.A == gl.A
    with pytest.raises(ValueError):
        glform.in_basis(gl, [[1] + [0] * (len(gl.basis_vectors[0]) - 1)])


def test_zero_polynomial():
    with pytest.raises(glform.ZeroPolynomial):
        glform.mock_alexander([[1, 1], [1, 1]])
    assert glform.mock_alexander([]) == (1,)


def test_curve_basis_walks():
    d = load_diagram(FIXTURES / "diagrams" / "k5_2429.txt")
    b = glform.curve_basis(d, None, "b")
    assert b.size == 5
    assert all(len(w) == 1 for w in b.crossings_traversed())
