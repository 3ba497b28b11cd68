"""Gordon-Litherland forms of checkerboard surfaces.

A mock Seifert matrix is assembled as ``A = S + X``: ``S`` collects the local
contributions at the crossings, ``X`` is the intersection form of the curves
projected to the surface. Curves are closed walks on the Tait graph of the
chosen colour; the fundamental cycle basis is used unless a basis is given.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import intlat, poly
from .embgraph import EmbeddedGraph, intersection_number, tait_graph


class ZeroPolynomial(ArithmeticError):
    pass


# The intersection number of the pushed-off walks comes out with the
# opposite sign to the linking convention; flipping here reproduces the
# running example's white mock Seifert matrix entry for entry.
INTERSECTION_SIGN = -1


@dataclass(frozen=True)
class HomologyCurveBasis:
    colour: str
    vectors: tuple  # edge vectors on the Tait graph (edges = crossings)
    walks: tuple  # closed dart walks realising the vectors
    graph: EmbeddedGraph = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.vectors)

    def crossings_traversed(self) -> list:
        """For each curve: ``(crossing id, +1/-1 direction)`` in walk order."""
        lab = self.graph.labels
        return [[(lab[h >> 1], 1 if h % 2 == 0 else -1) for h in w] for w in self.walks]


def curve_basis(d, c=None, colour: str = "b") -> HomologyCurveBasis:
    c = c or d.checkerboard_colour()
    g = tait_graph(d, c, colour)
    cb = g.cycle_basis()
    return HomologyCurveBasis(colour, cb.vectors, cb.walks, g)


def local_form(d, c, colour: str, vectors: Sequence[Sequence[int]]) -> list:
    """Symmetric part ``S``: each crossing adds ``eta`` times the product of
    traversal multiplicities, with the opposite sign on the white surface."""
    eta = [x.eta for x in d.classify_crossings(c)]
    sgn = 1 if colour == "b" else -1
    n = len(vectors)
    return [[sgn * sum(eta[x] * vectors[i][x] * vectors[j][x] for x in range(d.n)) for j in range(n)]
            for i in range(n)]


def intersection_form(basis: HomologyCurveBasis) -> list:
    g = basis.graph
    n = basis.size
    X = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                X[i][j] = INTERSECTION_SIGN * intersection_number(g, basis.vectors[i], basis.walks[j])
    for i in range(n):
        for j in range(i + 1, n):
            assert X[i][j] == -X[j][i], "intersection form must be antisymmetric"
    return X


@dataclass
class GLData:
    colour: str
    A: list
    S: list
    X: list
    mu: int
    basis_vectors: tuple = ()

    @property
    def size(self) -> int:
        return len(self.A)

    @property
    def determinant(self) -> int:
        return abs(intlat.det(self.A))

    @property
    def alexander_raw(self) -> tuple:
        return alexander_raw(self.A)

    @property
    def alexander(self) -> tuple:
        return mock_alexander(self.A)

    @property
    def signature(self) -> int:
        return intlat.sig(self.S) - self.mu

    def to_dict(self) -> dict:
        alex = self.alexander
        return {"colour": self.colour, "A": self.A, "S": self.S, "X": self.X, "mu": self.mu,
                "determinant": self.determinant,
                "alexander": list(alex), "alexander_str": poly.to_str(alex),
                "alexander_raw": list(self.alexander_raw), "signature": self.signature}


def alexander_raw(A) -> tuple:
    At = intlat.transpose(A)
    return poly.det_linear_pencil(A, [[-x for x in r] for r in At])


def mock_alexander(A) -> tuple:
    """Canonical form of ``det(tA - A^T)``; raises ``ZeroPolynomial`` if it vanishes."""
    if not A:
        return (1,)
    raw = alexander_raw(A)
    if not raw:
        raise ZeroPolynomial("det(tA - A^T) is identically zero")
    return poly.normalize(raw)


def gl_pairing(d, c=None, colour: str = "b", basis: Optional[HomologyCurveBasis] = None) -> list:
    c = c or d.checkerboard_colour()
    basis = basis or curve_basis(d, c, colour)
    return local_form(d, c, colour, basis.vectors)


def mock_seifert(d, c=None, colour: str = "b", basis: Optional[HomologyCurveBasis] = None) -> GLData:
    c = c or d.checkerboard_colour()
    basis = basis or curve_basis(d, c, colour)
    S = local_form(d, c, colour, basis.vectors)
    X = intersection_form(basis)
    A = [[s + x for s, x in zip(rs, rx)] for rs, rx in zip(S, X)]
    mu_b, mu_w = d.correction_terms(c)
    return GLData(colour, A, S, X, mu_b if colour == "b" else mu_w, basis.vectors)


def change_basis(gl: GLData, P: Sequence[Sequence[int]]) -> GLData:
    """Express the forms in the basis whose rows are ``P`` times the old basis."""
    Pt = intlat.transpose(P)
    A = intlat.matmul(P, intlat.matmul(gl.A, Pt))
    S = intlat.matmul(P, intlat.matmul(gl.S, Pt))
    X = intlat.matmul(P, intlat.matmul(gl.X, Pt))
    vecs = tuple(tuple(sum(p * v[e] for p, v in zip(row, gl.basis_vectors)) for e in range(len(gl.basis_vectors[0])))
                 for row in P) if gl.basis_vectors else ()
    return GLData(gl.colour, A, S, X, gl.mu, vecs)


def in_basis(gl: GLData, vectors: Sequence[Sequence[int]]) -> GLData:
    """Re-express ``gl`` in another basis given as edge vectors of the Tait graph."""
    P = []
    for v in vectors:
        x = intlat.coordinates([list(b) for b in gl.basis_vectors], list(v))
        if x is None:
            raise ValueError(f"{list(v)} is not a cycle of the Tait graph")
        P.append(x)
    return change_basis(gl, P)


def link_signature(d, c=None, colour: str = "b") -> int:
    return mock_seifert(d, c, colour).signature


def determinant(gl: GLData) -> int:
    return gl.determinant
