"""Characteristic covectors and the d-invariant of a positive definite lattice.

Vectors of the dual lattice are stored by their pairings with the basis
("dual coordinates"): ``y = M x`` where ``x`` are basis coordinates. Then
``|x| = y^T M^-1 y`` and ``y`` is characteristic iff ``y_i = M_ii (mod 2)``.
Characteristic cosets live modulo ``2 Lambda``, which in dual coordinates is
the row lattice of ``2M``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import intlat
from .intlat import IntegerLattice, NotPositiveDefinite


class NotInDualLattice(ValueError):
    pass


class AmbientTooLarge(ValueError):
    pass


class CosetCountMismatch(RuntimeError):
    pass


class OrderTooLarge(ValueError):
    pass


MAX_AMBIENT = 24
MAX_ORDER = 512
_CHUNK = 1 << 15


@dataclass(frozen=True)
class CharacteristicCoset:
    key: tuple  # dual coordinates reduced modulo 2M
    representative: tuple  # basis coordinates (Fractions) of a shortest member
    norm: Fraction


@dataclass
class DInvariant:
    gram: tuple
    cosets: list  # CharacteristicCoset, sorted by key
    values: dict  # key -> Fraction

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def order(self) -> int:
        return abs(intlat.det(self.gram)) if self.gram else 1

    def multiset(self) -> list:
        return sorted(self.values.values())

    def to_dict(self) -> dict:
        return {"gram": [list(r) for r in self.gram], "rank": self.rank, "order": self.order,
                "cosets": [{"key": list(c.key),
                            "representative": [str(x) for x in c.representative],
                            "norm": str(c.norm), "d": str(self.values[c.key])} for c in self.cosets]}

    def table(self) -> str:
        rows = [("representative", "norm", "d")]
        for c in self.cosets:
            rep = "(" + ", ".join(str(x) for x in c.representative) + ")"
            rows.append((rep, str(c.norm), str(self.values[c.key])))
        w = [max(len(r[i]) for r in rows) for i in range(3)]
        return "\n".join("  ".join(r[i].ljust(w[i]) for i in range(3)).rstrip() for r in rows) + "\n"


def _gram_of(L) -> list:
    if isinstance(L, IntegerLattice):
        return L.matrix
    return intlat.as_matrix(L)


def coset_key(gram, y, H=None) -> tuple:
    if H is None:
        H = intlat.hermite_normal_form([[2 * x for x in r] for r in gram])
    return intlat.reduce_mod_hnf(y, H)


def is_characteristic(L, xi: Sequence, *, coords: str = "basis") -> bool:
    """Check ``<xi, x> = |x| (mod 2)`` on the basis.

    ``xi`` is given in basis coordinates (rationals) or, with
    ``coords="dual"``, by its pairings with the basis.
    """
    M = _gram_of(L)
    if coords == "basis":
        y = [sum(Fraction(M[i][j]) * Fraction(xi[j]) for j in range(len(M))) for i in range(len(M))]
    else:
        y = [Fraction(v) for v in xi]
    if any(v.denominator != 1 for v in y):
        raise NotInDualLattice("vector does not pair integrally with the lattice")
    return all((int(y[i]) - M[i][i]) % 2 == 0 for i in range(len(M)))


def dual_norm(gram, y) -> Fraction:
    inv = intlat.inverse(gram)
    n = len(gram)
    return sum(Fraction(y[i]) * inv[i][j] * y[j] for i in range(n) for j in range(n))


def rho_invariant(L, xi: Sequence, *, coords: str = "basis") -> Fraction:
    """``(|xi| - sigma) / 4`` reduced into ``[0, 2)``."""
    M = _gram_of(L)
    if coords == "basis":
        y = [sum(Fraction(M[i][j]) * Fraction(xi[j]) for j in range(len(M))) for i in range(len(M))]
    else:
        y = [Fraction(v) for v in xi]
    if not is_characteristic(M, y, coords="dual"):
        raise ValueError("rho is only defined on characteristic covectors")
    val = (dual_norm(M, y) - intlat.sig(M)) / 4
    return val - 2 * (val // 2)


def d_invariant(L: IntegerLattice) -> DInvariant:
    """Project every ``±1`` vector of the ambient ``Z^N`` and keep the shortest per coset.

    The lattice must carry a basis inside ``Z^N``. The projection of ``v``
    has dual coordinates ``B v``, so no rational arithmetic is needed until
    the final norms.
    """
    if L.basis is None:
        raise ValueError("d_invariant needs a lattice realised in Z^N; use d_invariant_direct for a bare Gram")
    M = L.matrix
    r = len(M)
    if r == 0:
        return DInvariant((), [CharacteristicCoset((), (), Fraction(0))], {(): Fraction(0)})
    if not intlat.is_positive_definite(M):
        raise NotPositiveDefinite("d-invariant needs a positive definite lattice")
    B = np.array(L.basis, dtype=np.int64)
    N = B.shape[1]
    if N > MAX_AMBIENT:
        raise AmbientTooLarge(f"ambient dimension {N} exceeds {MAX_AMBIENT}")
    det = intlat.det(M)
    adj = np.array(intlat.adjugate(M), dtype=np.int64)
    H = intlat.hermite_normal_form([[2 * x for x in row] for row in M])
    pivots = [(next(j for j, x in enumerate(row) if x), np.array(row, dtype=np.int64)) for row in H]

    best: dict = {}  # key -> (scaled norm, y)
    total = 1 << N
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        bits = (idx[:, None] >> np.arange(N, dtype=np.int64)) & 1
        V = 1 - 2 * bits  # rows are ±1 vectors
        Y = V @ B.T
        K = Y.copy()
        for c, row in pivots:
            q = np.floor_divide(K[:, c], row[c])
            K -= q[:, None] * row[None, :]
        norms = np.einsum("ij,jk,ik->i", Y, adj, Y)
        keys, inv = np.unique(K, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        order = np.lexsort((norms, inv))
        first = np.ones(len(order), dtype=bool)
        first[1:] = inv[order][1:] != inv[order][:-1]
        for pos in order[first]:
            k = tuple(int(x) for x in keys[inv[pos]])
            nv = int(norms[pos])
            if k not in best or nv < best[k][0] or (nv == best[k][0] and tuple(Y[pos]) < best[k][1]):
                best[k] = (nv, tuple(int(x) for x in Y[pos]))
    if len(best) != abs(det):
        raise CosetCountMismatch(f"found {len(best)} characteristic cosets, expected |det| = {abs(det)}")
    return _assemble(M, {k: (Fraction(nv, det), y) for k, (nv, y) in best.items()})


def _assemble(M, best) -> DInvariant:
    r = len(M)
    inv = intlat.inverse(M)
    cosets, values = [], {}
    for k in sorted(best):
        norm, y = best[k]
        rep = tuple(sum(inv[i][j] * y[j] for j in range(r)) for i in range(r))
        cosets.append(CharacteristicCoset(k, rep, norm))
        values[k] = (norm - r) / 4
    return DInvariant(intlat._freeze(M), cosets, values)


def characteristic_residues(M) -> list:
    """Dual-coordinate representatives of all characteristic cosets mod ``2M``."""
    H = intlat.hermite_normal_form([[2 * x for x in row] for row in M])
    r = len(M)
    diag = [row[next(j for j, x in enumerate(row) if x)] for row in H]
    out = []
    for y in itertools.product(*[range(d) for d in diag]):
        if all((y[i] - M[i][i]) % 2 == 0 for i in range(r)):
            out.append(intlat.reduce_mod_hnf(list(y), H))
    return sorted(set(out))


def d_invariant_direct(gram) -> DInvariant:
    """d-invariant from the Gram matrix alone, by closest-vector search per coset.

    For a representative ``x`` the coset is ``x + 2 Lambda``, and
    ``min |x + 2z| = 4 min (z + x/2)^T M (z + x/2)``.
    """
    M = intlat.as_matrix(gram)
    r = len(M)
    if r == 0:
        return DInvariant((), [CharacteristicCoset((), (), Fraction(0))], {(): Fraction(0)})
    if not intlat.is_positive_definite(M):
        raise NotPositiveDefinite("d-invariant needs a positive definite lattice")
    inv = intlat.inverse(M)
    H = intlat.hermite_normal_form([[2 * x for x in row] for row in M])
    best = {}
    for y in characteristic_residues(M):
        x = [sum(inv[i][j] * y[j] for j in range(r)) for i in range(r)]
        centre = [-xi / 2 for xi in x]
        bound = Fraction(sum(x[i] * M[i][j] * x[j] for i in range(r) for j in range(r)), 4)
        top = None
        for z in intlat.short_vectors(M, bound, center=centre):
            w = [x[i] + 2 * z[i] for i in range(r)]
            nv = sum(w[i] * M[i][j] * w[j] for i in range(r) for j in range(r))
            yy = tuple(int(sum(M[i][j] * w[j] for j in range(r))) for i in range(r))
            if top is None or (nv, yy) < top:
                top = (nv, yy)
        best[coset_key(M, y, H)] = (Fraction(top[0]), top[1])
    return _assemble(M, best)


# ---------------------------------------------------------------------------
# isomorphism of d-invariants


class _Group:
    """``Z^r / M Z^r`` with elements stored as canonical residues."""

    def __init__(self, M):
        self.M = M
        self.r = len(M)
        self.H = intlat.hermite_normal_form(M)
        U, S, _ = smith = intlat.smith_normal_form(M)
        Uinv = intlat.inverse(U)
        self.factors = [S[i][i] for i in range(self.r) if S[i][i] != 1]
        pos = [i for i in range(self.r) if S[i][i] != 1]
        self.gens = [self.reduce([int(Uinv[k][i]) for k in range(self.r)]) for i in pos]
        self.elements = sorted({self.combo(c) for c in itertools.product(*[range(f) for f in self.factors])})

    def reduce(self, w) -> tuple:
        return intlat.reduce_mod_hnf(list(w), self.H)

    def add(self, a, b) -> tuple:
        return self.reduce([x + y for x, y in zip(a, b)])

    def scale(self, k, a) -> tuple:
        return self.reduce([k * x for x in a])

    def combo(self, coeffs) -> tuple:
        w = [0] * self.r
        for c, gvec in zip(coeffs, self.gens):
            w = [x + c * y for x, y in zip(w, gvec)]
        return self.reduce(w)

    def order_of(self, a) -> int:
        k, x = 1, a
        zero = self.reduce([0] * self.r)
        while x != zero:
            x = self.add(x, a)
            k += 1
        return k


def d_isomorphic(D1: DInvariant, D2: DInvariant, sign: int = 1) -> Optional[dict]:
    """Search for an equivariant bijection ``phi`` with ``d2(phi(x)) = sign * d1(x)``.

    The discriminant group acts on characteristic cosets by ``[y] -> [y + 2w]``.
    Returns the coset map on success and ``None`` otherwise.
    """
    if D1.order != D2.order:
        return None
    if D1.order > MAX_ORDER:
        raise OrderTooLarge(f"discriminant order {D1.order} exceeds {MAX_ORDER}")
    if sorted(sign * v for v in D1.values.values()) != D2.multiset():
        return None
    if D1.rank == 0 or D2.rank == 0:
        if D1.order == 1:
            (k1,), (k2,) = D1.values.keys(), D2.values.keys()
            return {k1: k2}
        return None
    G1, G2 = _Group(intlat.as_matrix(D1.gram)), _Group(intlat.as_matrix(D2.gram))
    if G1.factors != G2.factors:
        return None
    H1 = intlat.hermite_normal_form([[2 * x for x in r] for r in D1.gram])
    H2 = intlat.hermite_normal_form([[2 * x for x in r] for r in D2.gram])

    def act(key, w, H):
        return intlat.reduce_mod_hnf([a + 2 * b for a, b in zip(key, w)], H)

    base = min(D1.values)
    orbit1 = {g: act(base, g, H1) for g in G1.elements}
    coeffs = list(itertools.product(*[range(f) for f in G1.factors]))
    candidates = []
    for f in G1.factors:
        candidates.append([e for e in G2.elements if G2.order_of(e) == f])
    for images in itertools.product(*candidates):
        psi = {}
        ok = True
        for c in coeffs:
            src = G1.combo(c)
            w = [0] * G2.r
            for k, im in zip(c, images):
                w = [x + k * y for x, y in zip(w, im)]
            dst = G2.reduce(w)
            psi[src] = dst
        if len(set(psi.values())) != len(psi):
            continue
        for target in sorted(D2.values):
            if D2.values[target] != sign * D1.values[base]:
                continue
            phi = {}
            for g, k1 in orbit1.items():
                k2 = act(target, psi[g], H2)
                if D2.values[k2] != sign * D1.values[k1]:
                    ok = False
                    break
                phi[k1] = k2
            if ok and len(phi) == len(D1.values):
                return phi
            ok = True
    return None


def chromatic_duality_check(d) -> dict:
    """Check both chains ``F°(G) ~ C(G*) ~ -F(G*)`` of d-invariants for a diagram.

    The first link keeps the sign, the second negates it (cuts and flows of
    one graph are orthogonal complements in the edge lattice).
    """
    from . import cutflow
    from .embgraph import tait_graphs

    c = d.checkerboard_colour()
    black, white = tait_graphs(d, c)
    graphs = {"b": black, "w": white}
    D = {}
    for col, g in graphs.items():
        D[f"flow-{col}"] = d_invariant(cutflow.flow_lattice(g).lattice)
        D[f"flow0-{col}"] = d_invariant(cutflow.restricted_flow_lattice(g).lattice)
        D[f"cut-{col}"] = d_invariant(cutflow.cut_lattice(g).lattice)
    chains = []
    for col, other in (("b", "w"), ("w", "b")):
        first = d_isomorphic(D[f"flow0-{col}"], D[f"cut-{other}"], 1) is not None
        second = d_isomorphic(D[f"cut-{other}"], D[f"flow-{other}"], -1) is not None
        chains.append({"graph": col, "flow0~cut*": first, "cut*~-flow*": second,
                       "values": {k: [str(x) for x in D[k].multiset()]
                                  for k in (f"flow0-{col}", f"cut-{other}", f"flow-{other}")}})
    ok = all(ch["flow0~cut*"] and ch["cut*~-flow*"] for ch in chains)
    return {"ok": ok, "chains": chains}
