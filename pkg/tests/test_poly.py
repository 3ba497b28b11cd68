import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from surflat import poly

t = sympy.symbols("t")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))))
def test_pencil_determinant(AB):
    A, B = AB
    expect = sympy.Poly(sympy.expand((t * sympy.Matrix(A) + sympy.Matrix(B)).det()), t)
    got = poly.det_linear_pencil(A, B)
    want = tuple(int(c) for c in reversed(expect.all_coeffs())) if not expect.is_zero else ()
    assert tuple(poly.trim(got)) == poly.trim(want)


def test_normalize():
    # (t - 1)^2 t^3 (9t^2 - 14t + 9), negated
    p = sympy.Poly(-sympy.expand((t - 1) ** 2 * t ** 3 * (9 * t ** 2 - 14 * t + 9)), t)
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    assert poly.normalize(coeffs) == (9, -14, 9)
    assert poly.t_minus_1_power(coeffs) == 2
    assert poly.normalize([0, 0]) == ()


def test_division_and_evaluate():
    q, r = poly.divide_by_t_minus_1([-1, 0, 1])  # t^2 - 1
    assert q == (1, 1) and r == 0
    assert poly.evaluate([1, -3, 1], -1) == 5


def test_to_str():
    assert poly.to_str((9, -14, 9)) == "9t^2 - 14t + 9"
    assert poly.to_str((-1, 0, 1)) == "t^2 - 1"
    assert poly.to_str((0, -1)) == "-t"
    assert poly.to_str(()) == "0"
