"""Embedded (ribbon) multigraphs.

Edge ``e`` owns two darts: ``2e`` sits at its tail and points at the head,
``2e + 1`` sits at the head and points back. ``h ^ 1`` is the other end of
dart ``h``. The rotation at each vertex lists its darts counterclockwise.

Faces are the orbits of ``h -> rot_next(h ^ 1)``. Walking along a face orbit
keeps the face on the right, so every face boundary is read clockwise.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CycleBasis:
    vectors: tuple  # integer edge vectors
    walks: tuple  # closed dart walks, one per vector
    tree_edges: tuple
    chords: tuple  # edge generating each fundamental cycle


class EmbeddedGraph:
    def __init__(self, num_vertices: int, edges: Sequence[tuple], rotation: Sequence[Sequence[int]],
                 labels: Optional[Sequence] = None):
        self.num_vertices = int(num_vertices)
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        self.rotation = tuple(tuple(int(h) for h in r) for r in rotation)
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.edges)))
        if len(self.rotation) != self.num_vertices:
            raise ValueError("need one rotation per vertex")
        if len(self.labels) != len(self.edges):
            raise ValueError("need one label per edge")
        seen = sorted(h for r in self.rotation for h in r)
        if seen != list(range(2 * len(self.edges))):
            raise ValueError("every dart must appear exactly once in the rotation system")
        self._next = [0] * len(seen)
        self._pos = [0] * len(seen)
        for v, r in enumerate(self.rotation):
            for i, h in enumerate(r):
                if self.vertex(h) != v:
                    raise ValueError(f"dart {h} listed at vertex {v} but belongs to {self.vertex(h)}")
                self._next[h] = r[(i + 1) % len(r)]
                self._pos[h] = i
        self._faces = None

    # -- darts ---------------------------------------------------------
    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex(self, h: int) -> int:
        a, b = self.edges[h >> 1]
        return a if h % 2 == 0 else b

    def rot_next(self, h: int) -> int:
        return self._next[h]

    def face_next(self, h: int) -> int:
        return self._next[h ^ 1]

    # -- faces ---------------------------------------------------------
    def facial_walks(self) -> list:
        if self._faces is None:
            seen = [False] * (2 * self.num_edges)
            faces = []
            for h0 in range(2 * self.num_edges):
                if seen[h0]:
                    continue
                walk = []
                h = h0
                while not seen[h]:
                    seen[h] = True
                    walk.append(h)
                    h = self.face_next(h)
                faces.append(tuple(walk))
            self._faces = faces
        return list(self._faces)

    def face_of(self) -> list:
        """``face_of()[h]`` is the index of the face on the right of dart ``h``."""
        out = [0] * (2 * self.num_edges)
        for i, w in enumerate(self.facial_walks()):
            for h in w:
                out[h] = i
        return out

    @property
    def num_faces(self) -> int:
        return len(self.facial_walks())

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic()
        comps = self.num_components()
        g2 = 2 * comps - chi
        assert g2 % 2 == 0 and g2 >= 0
        return g2 // 2

    def num_components(self) -> int:
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        return len({find(v) for v in range(self.num_vertices)})

    def is_connected(self) -> bool:
        return self.num_vertices > 0 and self.num_components() == 1

    def face_vector(self, walk) -> list:
        v = [0] * self.num_edges
        for h in walk:
            v[h >> 1] += 1 if h % 2 == 0 else -1
        return v

    # -- chains --------------------------------------------------------
    def boundary_matrix(self) -> list:
        """``∂``: rows are vertices, columns edges, ``∂e = head - tail``."""
        M = [[0] * self.num_edges for _ in range(self.num_vertices)]
        for e, (a, b) in enumerate(self.edges):
            M[b][e] += 1
            M[a][e] -= 1
        return M

    def spanning_tree(self) -> list:
        """Edges of a BFS spanning forest, vertices visited in id order."""
        seen = [False] * self.num_vertices
        tree = []
        for root in range(self.num_vertices):
            if seen[root]:
                continue
            seen[root] = True
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for h in sorted(self.rotation[v], key=lambda h: (h >> 1, h)):
                    w = self.vertex(h ^ 1)
                    if not seen[w]:
                        seen[w] = True
                        tree.append(h >> 1)
                        queue.append(w)
        return tree

    def tree_paths(self, tree) -> tuple:
        """Parent darts toward the root for each vertex of the forest."""
        parent = [None] * self.num_vertices
        depth = [0] * self.num_vertices
        adj = [[] for _ in range(self.num_vertices)]
        tree_set = set(tree)
        for v in range(self.num_vertices):
            for h in self.rotation[v]:
                if h >> 1 in tree_set:
                    adj[v].append(h)
        seen = [False] * self.num_vertices
        for root in range(self.num_vertices):
            if seen[root]:
                continue
            seen[root] = True
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for h in adj[v]:
                    w = self.vertex(h ^ 1)
                    if not seen[w]:
                        seen[w] = True
                        parent[w] = h ^ 1  # dart at w pointing back up
                        depth[w] = depth[v] + 1
                        queue.append(w)
        return parent, depth

    def cycle_basis(self) -> CycleBasis:
        tree = self.spanning_tree()
        tree_set = set(tree)
        parent, depth = self.tree_paths(tree)
        vectors, walks, chords = [], [], []
        for e in range(self.num_edges):
            if e in tree_set:
                continue
            walk = [2 * e] + self._tree_walk(self.edges[e][1], self.edges[e][0], parent, depth)
            vec = [0] * self.num_edges
            for h in walk:
                vec[h >> 1] += 1 if h % 2 == 0 else -1
            vectors.append(tuple(vec))
            walks.append(tuple(walk))
            chords.append(e)
        return CycleBasis(tuple(vectors), tuple(walks), tuple(tree), tuple(chords))

    def _tree_walk(self, u, v, parent, depth) -> list:
        """Darts of the tree path from ``u`` to ``v``."""
        up, down = [], []
        while u != v:
            if depth[u] >= depth[v]:
                h = parent[u]
                up.append(h)
                u = self.vertex(h ^ 1)
            else:
                h = parent[v]
                down.append(h ^ 1)
                v = self.vertex(h ^ 1)
        return up + down[::-1]

    def vertex_cuts(self) -> list:
        """``∂*(v)``: out-edges minus in-edges. Loops contribute nothing."""
        cuts = []
        for v in range(self.num_vertices):
            vec = [0] * self.num_edges
            for e, (a, b) in enumerate(self.edges):
                if a == v:
                    vec[e] += 1
                if b == v:
                    vec[e] -= 1
            cuts.append(tuple(vec))
        return cuts

    # -- duality -------------------------------------------------------
    def surface_dual(self) -> "EmbeddedGraph":
        """Vertex per face, edge ``e*`` per edge ``e``.

        ``e*`` runs from the face right of ``e`` to the face on its left, so
        taking the dual twice reverses every edge. Dual dart ``h`` sits in
        the face on the right of primal dart ``h``.
        """
        faces = self.facial_walks()
        face = self.face_of()
        edges = [(face[2 * e], face[2 * e + 1]) for e in range(self.num_edges)]
        # face walks run clockwise; the dual rotation is the reverse order
        rotation = [tuple(reversed(w)) for w in faces]
        return EmbeddedGraph(len(faces), edges, rotation, self.labels)

    # -- export --------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"edge {self.labels[e]} {a} {b}" for e, (a, b) in enumerate(self.edges)]
        lines += ["rotation {} {}".format(v, " ".join(str(h) for h in r))
                  for v, r in enumerate(self.rotation)]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"vertices": self.num_vertices, "edges": [list(e) for e in self.edges],
                "rotation": [list(r) for r in self.rotation], "labels": list(self.labels)}

    def __repr__(self):
        return (f"EmbeddedGraph(V={self.num_vertices}, E={self.num_edges}, "
                f"F={self.num_faces}, g={self.genus})")


def graph_from_edges(num_vertices: int, edges: Sequence[tuple]) -> EmbeddedGraph:
    """Abstract graph with darts listed in edge order at each vertex."""
    rot = [[] for _ in range(num_vertices)]
    for e, (a, b) in enumerate(edges):
        rot[a].append(2 * e)
        rot[b].append(2 * e + 1)
    return EmbeddedGraph(num_vertices, edges, rot)


def embedded_isomorphism(g1: EmbeddedGraph, g2: EmbeddedGraph, *, allow_reversal: bool = True,
                         match_labels: bool = False) -> Optional[dict]:
    """Dart map realising an orientation preserving embedded isomorphism.

    Edges may be flipped when ``allow_reversal`` is set. Returns a dict from
    darts of ``g1`` to darts of ``g2`` or ``None``. Connected graphs only.
    """
    if (g1.num_vertices, g1.num_edges, g1.num_faces) != (g2.num_vertices, g2.num_edges, g2.num_faces):
        return None
    if g1.num_edges == 0:
        return {} if g1.num_vertices == g2.num_vertices else None
    start = 0
    for target in range(2 * g2.num_edges):
        m = _extend(g1, g2, start, target, allow_reversal, match_labels)
        if m is not None:
            return m
    return None


def _extend(g1, g2, h1, h2, allow_reversal, match_labels):
    m = {}
    stack = [(h1, h2)]
    while stack:
        a, b = stack.pop()
        if a in m:
            if m[a] != b:
                return None
            continue
        m[a] = b
        stack.append((g1.rot_next(a), g2.rot_next(b)))
        stack.append((a ^ 1, b ^ 1))
    if len(set(m.values())) != len(m) or len(m) != 2 * g1.num_edges:
        return None
    for a, b in m.items():
        if not allow_reversal and (a % 2) != (b % 2):
            return None
        if match_labels and g1.labels[a >> 1] != g2.labels[b >> 1]:
            return None
    return m


def circuits(g: EmbeddedGraph) -> set:
    """Edge supports of all circuits, as bitmasks (from the GF(2) cycle space)."""
    basis = []
    for v in g.cycle_basis().vectors:
        basis.append(sum(1 << e for e, x in enumerate(v) if x % 2))
    elements = set()
    for k in range(1, 1 << len(basis)):
        m = 0
        for i, b in enumerate(basis):
            if k >> i & 1:
                m ^= b
        elements.add(m)
    return {m for m in elements if not any(o != m and o & m == o for o in elements)}


def two_isomorphic(g1: EmbeddedGraph, g2: EmbeddedGraph, max_edges: int = 10) -> bool:
    """Brute-force search for an edge bijection carrying circuits onto circuits.

    Graphic matroids are regular, so matching the binary cycle spaces is the
    same as matching the integer flow lattices up to edge reorientation.
    """
    n = g1.num_edges
    if n != g2.num_edges:
        return False
    if n > max_edges:
        raise TooLarge(f"{n} edges exceeds the brute-force bound {max_edges}")
    c1, c2 = circuits(g1), circuits(g2)
    if len(c1) != len(c2):
        return False
    if sorted(bin(m).count("1") for m in c1) != sorted(bin(m).count("1") for m in c2):
        return False

    def profile(cs, e):
        return sorted(bin(m).count("1") for m in cs if m >> e & 1)

    prof1 = [profile(c1, e) for e in range(n)]
    prof2 = [profile(c2, e) for e in range(n)]
    perm = [None] * n
    used = [False] * n

    def ok(k):
        # every circuit living inside edges 0..k must map to a circuit
        limit = (1 << (k + 1)) - 1
        for m in c1:
            if m & ~limit == 0 and m >> k & 1:
                img = sum(1 << perm[e] for e in range(k + 1) if m >> e & 1)
                if img not in c2:
                    return False
        return True

    def search(k):
        if k == n:
            return True
        for t in range(n):
            if used[t] or prof1[k] != prof2[t]:
                continue
            perm[k] = t
            used[t] = True
            if ok(k) and search(k + 1):
                return True
            used[t] = False
        perm[k] = None
        return False

    return search(0)


def tait_graph(d, c, colour: str = "b") -> EmbeddedGraph:
    """Tait graph of one colour: a vertex per face of that colour, an edge per crossing.

    ``d`` is a ``SurfaceDiagram`` and ``c`` its ``Colouring``. Edge ``x`` joins
    the two corners of crossing ``x`` that carry the colour, directed from the
    lower-numbered corner. Edge labels are crossing ids.
    """
    want_black = colour == "b"
    faces = [f for f in range(d.num_faces) if c.black[f] == want_black]
    vid = {f: k for k, f in enumerate(faces)}
    corners = []
    edges = []
    for i in range(d.n):
        k0 = 1 if c.black[d.corner_face(i, 1)] == want_black else 0
        corners.append((k0, k0 + 2))
        edges.append((vid[d.corner_face(i, k0)], vid[d.corner_face(i, k0 + 2)]))
    rotation = []
    for f in faces:
        around = []
        for dart in d.faces[f]:
            i, k = dart // 4, (dart - 1) % 4  # dart (i, k+1) carries corner (i, k)
            lo, hi = corners[i]
            if k == lo:
                around.append(2 * i)
            elif k == hi:
                around.append(2 * i + 1)
        rotation.append(tuple(reversed(around)))
    return EmbeddedGraph(len(faces), edges, rotation, [x.id for x in d.crossings])


def tait_graphs(d, c=None) -> tuple:
    c = c or d.checkerboard_colour()
    return tait_graph(d, c, "b"), tait_graph(d, c, "w")


def intersection_number(g: "EmbeddedGraph", alpha: Sequence[int], walk: Sequence[int]) -> int:
    """Algebraic intersection of the flow ``alpha`` with the closed walk ``walk``.

    The walk is pushed off the graph to its right. At each vertex the pushed
    copy sweeps counterclockwise from the arriving dart to the leaving one
    and crosses every dart strictly in between; each crossing counts the
    flow of ``alpha`` out of the vertex along that dart.
    """
    total = 0
    m = len(walk)
    for i in range(m):
        back = walk[i] ^ 1
        nxt = walk[(i + 1) % m]
        if g.vertex(back) != g.vertex(nxt):
            raise ValueError("walk is not closed")
        x = g.rot_next(back)
        while x != nxt:
            total += alpha[x >> 1] if x % 2 == 0 else -alpha[x >> 1]
            x = g.rot_next(x)
    return total


def surface_dual_pair_check(black: EmbeddedGraph, white: EmbeddedGraph) -> bool:
    """True when ``white`` is the surface dual of ``black`` with matching edge labels."""
    return embedded_isomorphism(black.surface_dual(), white, match_labels=True) is not None
