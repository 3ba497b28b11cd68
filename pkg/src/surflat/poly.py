"""Integer polynomials as coefficient tuples, lowest degree first."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def trim(p: Sequence[int]) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def det_linear_pencil(A, B) -> tuple:
    """Coefficients of ``det(t*A + B)``.

    Evaluates exact determinants at ``t = 0..n`` and interpolates.
    """
    from .intlat import det

    n = len(A)
    if n == 0:
        return (1,)
    xs = list(range(n + 1))
    ys = [det([[t * a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]) for t in xs]
    return trim(interpolate(xs, ys))


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list:
    """Newton interpolation, returned in the monomial basis."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (t - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for k in range(n - 1):
            nxt[k + 1] += out[k]
        for k in range(n):
            nxt[k] -= xs[i] * out[k]
        nxt[0] += coef[i]
        out = nxt
    if any(c.denominator != 1 for c in out):
        raise ArithmeticError("interpolated polynomial is not integral")
    return [int(c) for c in out]


def divide_by_t_minus_1(p: Sequence[int]):
    """Return ``(q, r)`` with ``p = (t - 1) q + r`` (synthetic division)."""
    p = list(p)
    if not p:
        return (), 0
    q = [0] * (len(p) - 1)
    acc = 0
    for k in range(len(p) - 1, 0, -1):
        acc = acc + p[k]
        q[k - 1] = acc
    return tuple(q), acc + p[0]


def normalize(p: Sequence[int]) -> tuple:
    """Strip powers of ``t`` and of ``(t - 1)``, then make the top coefficient positive.

    The zero polynomial normalises to ``()``.
    """
    p = list(trim(p))
    if not p:
        return ()
    while p[0] == 0:
        p.pop(0)
    while len(p) > 1:
        q, r = divide_by_t_minus_1(p)
        if r != 0:
            break
        p = list(q)
    if p[-1] < 0:
        p = [-c for c in p]
    return tuple(p)


def t_minus_1_power(p: Sequence[int]) -> int:
    p = list(trim(p))
    if not p:
        return 0
    while p[0] == 0:
        p.pop(0)
    k = 0
    while len(p) > 1:
        q, r = divide_by_t_minus_1(p)
        if r:
            break
        p = list(q)
        k += 1
    return k


def evaluate(p: Sequence[int], t) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def to_str(p: Sequence[int], var: str = "t") -> str:
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        body += mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s
