from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from surflat import intlat
from surflat.intlat import IntegerLattice, LatticeError, NotPositiveDefinite

small = st.integers(-6, 6)


def mats(m, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)


square = st.integers(1, 5).flatmap(lambda n: mats(n, n))
rect = st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(lambda mn: mats(*mn))


@settings(max_examples=60, deadline=None)
@given(square)
def test_det_matches_sympy(M):
    assert intlat.det(M) == sympy.Matrix(M).det()


@settings(max_examples=60, deadline=None)
@given(rect)
def test_smith_form_transforms(M):
    U, S, V = intlat.smith_normal_form(M)
    assert intlat.matmul(intlat.matmul(U, M), V) == S
    assert abs(intlat.det(U)) == 1 and abs(intlat.det(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60, deadline=None)
@given(rect)
def test_hnf_spans_same_lattice(M):
    H = intlat.hermite_normal_form(M)
    assert intlat.same_lattice(H, M)
    assert intlat.hermite_normal_form(H) == H
    assert len(H) == intlat.rank(M)


@settings(max_examples=60, deadline=None)
@given(rect)
def test_integer_kernel(M):
    n = len(M[0])
    K = intlat.integer_kernel(M, n)
    assert len(K) == n - intlat.rank(M)
    for v in K:
        assert intlat.matvec(M, v) == [0] * len(M)
    # saturated: the kernel basis spans a primitive sublattice
    if K:
        assert intlat.invariant_factors(K) == [1] * len(K)


def test_smith_known():
    assert intlat.invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert intlat.invariant_factors([[3, 1], [1, 3]]) == [1, 8]


def test_hnf_known():
    assert intlat.hermite_normal_form([[2, 4], [6, 8], [0, 0]]) == [[2, 0], [0, 4]]


def test_signature_and_definiteness():
    assert intlat.signature([[1, 2], [2, 1]]) == (1, 1, 0)
    assert intlat.signature([[0, 0], [0, 3]]) == (1, 0, 1)
    assert intlat.sig([[-2, 1], [1, -2]]) == -2
    assert intlat.is_positive_definite([[2, -1], [-1, 2]])
    assert not intlat.is_positive_definite([[1, 2], [2, 1]])


def test_short_vectors_counts():
    # A2 root lattice: 6 roots of norm 2, 6 vectors of norm 6
    A2 = [[2, -1], [-1, 2]]
    assert intlat.norm_counts(A2, 6) == {2: 6, 6: 6}
    assert intlat.norm_counts(intlat.identity(3), 2) == {1: 6, 2: 12}


def test_short_vectors_with_center():
    vs = list(intlat.short_vectors([[1, 0], [0, 1]], Fraction(1, 2), center=[Fraction(1, 2), Fraction(1, 2)]))
    assert sorted(vs) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_generating_norm_ignores_basis():
    A2 = [[2, -1], [-1, 2]]
    P = [[1, 3], [0, 1]]
    big = intlat.congruence(A2, P)
    assert max(big[i][i] for i in range(2)) > 2
    assert intlat.generating_norm(A2) == intlat.generating_norm(big) == 2


def test_discriminant_group():
    L = IntegerLattice.from_gram([[3, 1], [1, 3]])
    assert L.discriminant_group().factors == (8,)
    assert str(intlat.discriminant_group([[2, 0], [0, 2]])) == "Z/2 + Z/2"
    with pytest.raises(LatticeError):
        intlat.discriminant_group([[1, 1], [1, 1]])
    with pytest.raises(LatticeError):
        IntegerLattice.from_gram([[1, 2], [0, 1]])


def test_lattice_from_basis():
    L = IntegerLattice.from_basis([[1, 1, 1, 0, 0], [0, 0, 1, 1, 1]])
    assert L.matrix == [[3, 1], [1, 3]]
    assert L.ambient_dim == 5 and L.rank == 2 and L.det == 8 and not L.is_even()


def test_pd_isometric_witness():
    M = [[2, 1, 0], [1, 3, -1], [0, -1, 2]]
    N = [[2, -1, 0], [-1, 3, -1], [0, -1, 2]]
    v = intlat.pd_isometric(M, N)
    assert v.status == "yes" and v.witness_det == 1
    assert intlat.congruence(M, v.witness) == N
    assert intlat.pd_isometric([[2, 0], [0, 3]], [[1, 0], [0, 6]]).status == "no"
    with pytest.raises(NotPositiveDefinite):
        intlat.pd_isometric([[1, 2], [2, 1]], [[1, 2], [2, 1]])


def test_pd_isometric_same_invariants_different_class():
    # two classes of determinant 12 in rank 2 with the same discriminant group
    a, b = [[2, 0], [0, 6]], [[4, 2], [2, 4]]
    assert intlat.det(a) == intlat.det(b) == 12
    assert intlat.unimodular_congruent(a, b).status == "no"


def test_unimodular_congruent_nonsymmetric():
    A = [[-3, 0], [2, -3]]
    P = [[1, 1], [0, 1]]
    B = intlat.congruence(A, P)
    v = intlat.unimodular_congruent(A, B)
    assert v.status == "yes" and intlat.congruence(A, v.witness) == B
    # the transpose has the same invariants and is congruent via a reflection
    assert intlat.unimodular_congruent(A, intlat.transpose(A)).status == "yes"
    assert intlat.unimodular_congruent(A, [[-3, 1], [1, -3]]).status == "no"


def test_unimodular_congruent_indefinite_small():
    H = [[0, 1], [1, 0]]
    assert intlat.unimodular_congruent(H, [[0, 1], [1, 0]]).status == "yes"
    # odd vs even indefinite unimodular forms
    assert intlat.unimodular_congruent(H, [[1, 0], [0, -1]]).status == "no"


def test_coordinates():
    B = [[1, 1, 0], [0, 1, 1]]
    assert intlat.coordinates(B, [1, 2, 1]) == [1, 1]
    assert intlat.coordinates(B, [1, 0, 0]) is None
