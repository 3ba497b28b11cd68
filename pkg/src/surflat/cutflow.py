"""Flow and cut lattices of embedded graphs and the map into surface homology.

Edges are declared orthonormal, so every lattice here sits inside the
Euclidean edge space ``Z^E`` and inherits its Gram matrix from there.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import intlat
from .embgraph import EmbeddedGraph, surface_dual_pair_check
from .intlat import IntegerLattice


@dataclass(frozen=True)
class GraphLattice:
    """A sublattice of ``Z^E(G)`` with its provenance."""
    kind: str  # "flow", "cut" or "flow0"
    lattice: IntegerLattice
    source: str = ""

    @property
    def basis(self) -> list:
        return [list(r) for r in (self.lattice.basis or ())]

    @property
    def gram(self) -> list:
        return self.lattice.matrix

    @property
    def rank(self) -> int:
        return self.lattice.rank


def _lattice(rows, ambient: int) -> IntegerLattice:
    rows = [list(r) for r in rows]
    if not rows:
        return IntegerLattice(gram=(), basis=())
    L = IntegerLattice.from_basis(rows)
    assert len(rows[0]) == ambient
    return L


def flow_lattice(g: EmbeddedGraph) -> GraphLattice:
    cb = g.cycle_basis()
    return GraphLattice("flow", _lattice(cb.vectors, g.num_edges), "fundamental cycles of a BFS tree")


def cut_lattice(g: EmbeddedGraph) -> GraphLattice:
    """Vertex cuts of every vertex except the largest id (connected graphs)."""
    cuts = g.vertex_cuts()[:-1] if g.num_vertices else []
    return GraphLattice("cut", _lattice(cuts, g.num_edges), "vertex cuts, last vertex dropped")


@dataclass(frozen=True)
class SurfaceHomologyMap:
    """``iota_*`` in the fundamental cycle basis and a tree-cotree basis of ``H_1``.

    ``matrix[i]`` holds the coordinates of the image of cycle ``i``;
    ``edge_map`` sends any edge chain that is a cycle to its coordinates.
    """
    matrix: tuple
    edge_map: tuple  # 2g rows, E columns
    generators: tuple  # leftover edges, one per homology generator
    genus: int

    def apply(self, cycle) -> list:
        return [sum(a * b for a, b in zip(row, cycle)) for row in self.edge_map]


def tree_cotree(g: EmbeddedGraph) -> tuple:
    """``(tree, cotree, leftover)`` edge lists; ``len(leftover) == 2g``."""
    tree = g.spanning_tree()
    in_tree = set(tree)
    face = g.face_of()
    nf = g.num_faces
    adj = [[] for _ in range(nf)]
    for e in range(g.num_edges):
        if e not in in_tree:
            adj[face[2 * e]].append(e)
            adj[face[2 * e + 1]].append(e)
    seen = [False] * nf
    cotree = []
    for root in range(nf):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for e in sorted(adj[f]):
                other = face[2 * e + 1] if face[2 * e] == f else face[2 * e]
                if not seen[other]:
                    seen[other] = True
                    cotree.append(e)
                    queue.append(other)
    used = in_tree | set(cotree)
    leftover = [e for e in range(g.num_edges) if e not in used]
    return tree, cotree, leftover


def _edge_homology_map(g: EmbeddedGraph):
    tree, cotree, leftover = tree_cotree(g)
    face = g.face_of()
    nf = g.num_faces
    by_face = [[] for _ in range(nf)]
    for e in cotree:
        by_face[face[2 * e]].append(e)
        by_face[face[2 * e + 1]].append(e)

    def coords(alpha):
        # subtract face boundaries so that alpha vanishes on the cotree;
        # edge e picks up k[right of 2e] - k[right of 2e+1]
        k = [None] * nf
        for root in range(nf):
            if k[root] is not None:
                continue
            k[root] = 0
            queue = deque([root])
            while queue:
                f = queue.popleft()
                for e in by_face[f]:
                    f1, f2 = face[2 * e], face[2 * e + 1]
                    if k[f1] is None:
                        k[f1] = alpha[e] + k[f2]
                        queue.append(f1)
                    elif k[f2] is None:
                        k[f2] = k[f1] - alpha[e]
                        queue.append(f2)
        return [alpha[e] - (k[face[2 * e]] - k[face[2 * e + 1]]) for e in leftover]

    cols = []
    for j in range(g.num_edges):
        unit = [0] * g.num_edges
        unit[j] = 1
        cols.append(coords(unit))
    edge_map = tuple(tuple(cols[j][i] for j in range(g.num_edges)) for i in range(len(leftover)))
    return edge_map, tuple(leftover)


def inclusion_map(g: EmbeddedGraph, basis=None) -> SurfaceHomologyMap:
    edge_map, leftover = _edge_homology_map(g)
    if basis is None:
        basis = g.cycle_basis().vectors
    M = tuple(tuple(sum(a * b for a, b in zip(row, c)) for row in edge_map) for c in basis)
    return SurfaceHomologyMap(M, edge_map, leftover, g.genus)


def restricted_flow_lattice(g: EmbeddedGraph) -> GraphLattice:
    """``F°(G) = ker iota_*``, as a primitive sublattice of ``F(G)``."""
    cb = g.cycle_basis().vectors
    if not cb:
        return GraphLattice("flow0", _lattice([], g.num_edges), "kernel of iota_*")
    imap = inclusion_map(g, cb)
    if imap.genus == 0:
        rows = [list(v) for v in cb]
    else:
        # integer_kernel returns a saturated kernel, so the basis is primitive
        K = intlat.integer_kernel(intlat.transpose(imap.matrix), ncols=len(cb))
        rows = [[sum(k[i] * cb[i][e] for i in range(len(cb))) for e in range(g.num_edges)] for k in K]
    rows = intlat.hermite_normal_form(rows) if rows else []
    return GraphLattice("flow0", _lattice(rows, g.num_edges), "kernel of iota_*")


def kirchhoff_tree_count(g: EmbeddedGraph) -> int:
    """Spanning trees via the matrix-tree theorem (reduced Laplacian)."""
    n = g.num_vertices
    if n <= 1:
        return 1
    L = [[0] * n for _ in range(n)]
    for a, b in g.edges:
        if a == b:
            continue
        L[a][a] += 1
        L[b][b] += 1
        L[a][b] -= 1
        L[b][a] -= 1
    return intlat.det([row[:-1] for row in L[:-1]])


# ---------------------------------------------------------------------------
# duality check

@dataclass
class DualityReport:
    colour: str
    genus: int
    kernel_matches_dual_cuts: bool
    gram_congruent: str  # verdict status
    iota_surjective: bool
    quotient_free_rank: Optional[int]
    quotient_torsion: tuple
    faces_in_kernel: bool
    ranks: dict = field(default_factory=dict)
    failure: str = ""

    @property
    def ok(self) -> bool:
        return (self.kernel_matches_dual_cuts and self.gram_congruent == "yes" and self.iota_surjective
                and self.quotient_free_rank == 2 * self.genus and not self.quotient_torsion
                and self.faces_in_kernel)

    def to_dict(self) -> dict:
        return {"colour": self.colour, "genus": self.genus, "ok": self.ok,
                "kernel_matches_dual_cuts": self.kernel_matches_dual_cuts,
                "gram_congruent": self.gram_congruent, "iota_surjective": self.iota_surjective,
                "quotient_free_rank": self.quotient_free_rank,
                "quotient_torsion": list(self.quotient_torsion),
                "faces_in_kernel": self.faces_in_kernel, "ranks": self.ranks, "failure": self.failure}


def check_graph_duality(g: EmbeddedGraph, colour: str = "") -> DualityReport:
    """Check ``0 -> C(G*) -> F(G) -> H_1(Sigma) -> 0`` for one embedded graph."""
    gd = g.surface_dual()
    F = flow_lattice(g)
    F0 = restricted_flow_lattice(g)
    Cd = cut_lattice(gd)
    imap = inclusion_map(g)
    genus = g.genus
    same = intlat.same_lattice(F0.basis, Cd.basis) if (F0.rank or Cd.rank) else True
    if F0.rank != Cd.rank:
        verdict = "no"
    elif F0.rank == 0:
        verdict = "yes"
    else:
        verdict = intlat.unimodular_congruent(F0.gram, Cd.gram).status
    # iota_* onto H_1: invariant factors of the 2g columns all equal 1
    if genus == 0:
        surj = True
    elif not imap.matrix:
        surj = False
    else:
        inv = intlat.invariant_factors(imap.matrix)
        surj = len(inv) == 2 * genus and all(x == 1 for x in inv)
    # F(G) / phi(C(G*)): express cuts in the cycle basis and read the SNF
    cb = F.basis
    torsion: tuple = ()
    free_rank = None
    if cb:
        coords = []
        for v in Cd.basis:
            x = intlat.coordinates(cb, v)
            if x is None:
                coords = None
                break
            coords.append(x)
        if coords is not None:
            if coords:
                inv = intlat.invariant_factors(coords)
                nz = [x for x in inv if x]
                torsion = tuple(x for x in nz if x != 1)
                free_rank = len(cb) - len(nz)
            else:
                free_rank = len(cb)
    else:
        free_rank = 0
    faces_ok = all(not any(imap.apply(g.face_vector(w))) for w in g.facial_walks())
    rep = DualityReport(colour, genus, same, verdict, surj, free_rank, torsion, faces_ok,
                        {"flow": F.rank, "flow0": F0.rank, "dual_cut": Cd.rank, "H1": 2 * genus})
    if not rep.ok:
        for name, good in (("phi(C(G*)) = F°(G)", same), ("Gram congruence", verdict == "yes"),
                           ("iota_* surjective", surj), ("quotient free of rank 2g",
                                                          free_rank == 2 * genus and not torsion),
                           ("faces in ker iota_*", faces_ok)):
            if not good:
                rep.failure = name
                break
    return rep


def verify_duality(d) -> list:
    """Run the duality check for both Tait graphs of a colourable diagram."""
    from .embgraph import tait_graphs

    black, white = tait_graphs(d)
    reports = [check_graph_duality(black, "b"), check_graph_duality(white, "w")]
    pair = surface_dual_pair_check(black, white)
    for r in reports:
        r.ranks["tait_pair_dual"] = pair
        if not pair and not r.failure:
            r.failure = "Tait graphs are not surface duals"
    return reports
