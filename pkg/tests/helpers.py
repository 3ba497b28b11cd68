"""Independent oracles used by the tests.

These work straight from the crossing tuples with sympy and never call the
lattice or Gordon-Litherland code they are meant to check.
"""
from itertools import product
from pathlib import Path

import sympy

FIXTURES = Path(__file__).parent / "fixtures"
t, A = sympy.symbols("t A")


def _strands(d):
    """Union arcs joined through over-passes; returns arc -> strand index."""
    parent = {a: a for a in d.arc_ends}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        parent[find(c.slots[1])] = find(c.slots[3])
    roots = sorted({find(a) for a in parent})
    idx = {r: k for k, r in enumerate(roots)}
    return {a: idx[find(a)] for a in parent}


def fox_alexander(d):
    """Classical Alexander polynomial of a knot diagram on the sphere.

    Rows are Fox derivatives of the Wirtinger relations, abelianised. The
    result is made monic-ish: t^k factors removed, leading coefficient positive.
    """
    st = _strands(d)
    m = max(st.values()) + 1
    rows = []
    for i, c in enumerate(d.crossings):
        row = [0] * m
        a_in, a_out = c.slots[0], c.slots[2]
        over = st[c.slots[1]]
        if d.signs[i] > 0:
            row[over] += 1 - t
            row[st[a_in]] += t
            row[st[a_out]] -= 1
        else:
            row[over] += t - 1
            row[st[a_in]] += 1
            row[st[a_out]] -= t
        rows.append(row)
    M = sympy.Matrix(rows)
    minor = M[1:, 1:] if m > 1 else sympy.Matrix([[1]])
    p = sympy.Poly(sympy.expand(minor.det()), t)
    coeffs = p.all_coeffs()[::-1]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if coeffs and coeffs[-1] < 0:
        coeffs = [-x for x in coeffs]
    return tuple(int(x) for x in coeffs)


def kauffman_bracket(d):
    """State sum over all smoothings; returns a Laurent polynomial in A."""
    n = d.n
    delta = -A ** 2 - A ** -2
    total = 0
    for state in product((0, 1), repeat=n):
        parent = {a: a for a in d.arc_ends}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, s in zip(d.crossings, state):
            a, b, cc, dd = c.slots
            pairs = ((a, b), (cc, dd)) if s == 0 else ((a, dd), (b, cc))
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(a) for a in parent})
        k = state.count(0) - state.count(1)
        total += A ** k * delta ** (loops - 1)
    return sympy.expand(total)


def is_monomial(expr) -> bool:
    return len(sympy.Add.make_args(sympy.expand(expr))) == 1


def laplacian_tree_count(num_vertices, edges):
    """Matrix-tree theorem on a multigraph (loops ignored), exact over Q."""
    L = sympy.zeros(num_vertices, num_vertices)
    for a, b in edges:
        if a == b:
            continue
        L[a, a] += 1
        L[b, b] += 1
        L[a, b] -= 1
        L[b, a] -= 1
    if num_vertices == 1:
        return 1
    return int(L[1:, 1:].det())
