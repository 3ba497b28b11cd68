"""Link diagrams on closed oriented surfaces, given as rotation codes.

Each crossing lists four arc labels counterclockwise, slot 0 being the
incoming under-strand. The under-strand runs from slot 0 to slot 2 and the
over-strand joins slots 1 and 3. The surface is whatever the rotation
system closes off.

A dart ``4*i + s`` is the end of the arc sitting in slot ``s`` of crossing
``i``. Faces are orbits of ``d -> next_slot(other_end(d))``; they keep the
face on the right. Corner ``k`` of a crossing lies between slots ``k`` and
``k + 1`` and belongs to the face through dart ``(i, k + 1)``.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence


class DiagramError(ValueError):
    """Invalid diagram input."""


class ParseError(DiagramError):
    pass


class NotCheckerboardColourable(DiagramError):
    pass


class NotADisc(DiagramError):
    pass


class BoundaryNotFour(DiagramError):
    pass


@dataclass(frozen=True)
class Crossing:
    id: str
    slots: tuple

    def __post_init__(self):
        if len(self.slots) != 4:
            raise ParseError(f"crossing {self.id}: expected 4 arcs, got {len(self.slots)}")


@dataclass(frozen=True)
class Colouring:
    """``black[f]`` is True when face ``f`` is black."""
    black: tuple

    def colour(self, f: int) -> str:
        return "b" if self.black[f] else "w"

    def swapped(self) -> "Colouring":
        return Colouring(tuple(not x for x in self.black))


@dataclass(frozen=True)
class CrossingClass:
    colour_type: str  # "A" or "B"
    orientation_type: str  # "I" or "II"
    eta: int
    sign: int


@dataclass(frozen=True)
class TangleSpec:
    crossings: tuple  # crossing ids
    boundary: tuple  # four arc labels in cyclic order around the tangle
    involution: str  # "h", "v" or "pi"

    def __post_init__(self):
        if self.involution not in ("h", "v", "pi"):
            raise ValueError(f"unknown involution {self.involution!r}")

    @classmethod
    def parse(cls, text: str) -> "TangleSpec":
        """Parse ``crossings=3,4,5 boundary=a7,a9,a12,a2 involution=h``."""
        parts = dict(tok.split("=", 1) for tok in text.replace(";", " ").split())
        try:
            crossings = tuple(c.strip() for c in parts["crossings"].split(",") if c.strip())
            boundary = tuple(_arc_label(a) for a in parts["boundary"].split(","))
            involution = parts.get("involution", "pi")
        except KeyError as exc:
            raise ValueError(f"tangle spec missing {exc.args[0]!r}") from None
        return cls(crossings, boundary, involution)

    def to_dict(self) -> dict:
        return {"crossings": list(self.crossings), "boundary": list(self.boundary),
                "involution": self.involution}


def _arc_label(tok: str) -> int:
    tok = tok.strip()
    if tok[:1] in ("a", "A"):
        tok = tok[1:]
    return int(tok)


class SurfaceDiagram:
    def __init__(self, crossings: Sequence[Crossing], *, name: Optional[str] = None):
        self.crossings = tuple(crossings)
        self.name = name
        if not self.crossings:
            raise DiagramError("diagrams with no crossings are not supported")
        ids = [c.id for c in self.crossings]
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate crossing ids")
        self._index = {c.id: i for i, c in enumerate(self.crossings)}
        ends: dict = {}
        for i, c in enumerate(self.crossings):
            for s, a in enumerate(c.slots):
                ends.setdefault(a, []).append(4 * i + s)
        for a, where in sorted(ends.items()):
            if len(where) != 2:
                locs = ", ".join(f"crossing {self.crossings[d // 4].id} slot {d % 4}" for d in where)
                raise ParseError(f"arc {a} occurs {len(where)} time(s) ({locs}); expected exactly 2")
        self.arc_ends = {a: tuple(w) for a, w in ends.items()}
        self._alpha = [0] * (4 * len(self.crossings))
        for a, (d1, d2) in self.arc_ends.items():
            self._alpha[d1] = d2
            self._alpha[d2] = d1
        if not self._connected():
            raise DiagramError("diagram is split (its 4-valent graph is disconnected)")
        self._faces = self._trace_faces()
        self._orient()

    # -- combinatorics -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.crossings)

    def index(self, cid) -> int:
        return self._index[str(cid)]

    def arc(self, d: int) -> int:
        return self.crossings[d // 4].slots[d % 4]

    def other_end(self, d: int) -> int:
        return self._alpha[d]

    @staticmethod
    def next_slot(d: int) -> int:
        return d - d % 4 + (d + 1) % 4

    @staticmethod
    def opposite(d: int) -> int:
        return d - d % 4 + (d + 2) % 4

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for s in range(4):
                j = self._alpha[4 * i + s] // 4
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return len(seen) == self.n

    def _trace_faces(self):
        nd = 4 * self.n
        face = [-1] * nd
        walks = []
        for d0 in range(nd):
            if face[d0] >= 0:
                continue
            walk = []
            d = d0
            while face[d] < 0:
                face[d] = len(walks)
                walk.append(d)
                d = self.next_slot(self._alpha[d])
            walks.append(tuple(walk))
        self._face_of = face
        return walks

    @property
    def faces(self) -> list:
        return list(self._faces)

    def face_of_dart(self, d: int) -> int:
        return self._face_of[d]

    def corner_face(self, i: int, k: int) -> int:
        return self._face_of[4 * i + (k + 1) % 4]

    @property
    def num_faces(self) -> int:
        return len(self._faces)

    @property
    def genus(self) -> int:
        chi = self.n - 2 * self.n + self.num_faces
        assert chi % 2 == 0 and chi <= 2, "Euler characteristic of a closed surface"
        return (2 - chi) // 2

    # -- orientation ---------------------------------------------------
    def _orient(self):
        """Trace components through opposite slots and fix their directions."""
        nd = 4 * self.n
        done = [False] * nd
        comps = []
        for start in range(nd):
            if done[start]:
                continue
            steps = []  # (in dart, out dart)
            d = start
            while True:
                out = self.opposite(d)
                done[d] = done[out] = True
                steps.append((d, out))
                d = self._alpha[out]
                if d == start:
                    break
            votes = set()
            for a, b in steps:
                if a % 4 == 0:
                    votes.add(1)
                elif a % 4 == 2:
                    votes.add(-1)
            if len(votes) == 2:
                raise ParseError("slot 0 must be the incoming under-strand at every crossing; "
                                 f"component through arc {self.arc(start)} disagrees")
            if votes:
                direction = votes.pop()
            else:
                direction = self._numbering_direction(steps)
            if direction < 0:
                steps = [(b, a) for a, b in reversed(steps)]
            comps.append(steps)
        # canonical order: by smallest arc label on the component
        comps.sort(key=lambda st: min(self.arc(a) for a, _ in st))
        self._components = comps
        incoming = [None] * nd
        for st in comps:
            for a, b in st:
                incoming[a] = True
                incoming[b] = False
        self._incoming = incoming
        signs = []
        for i in range(self.n):
            signs.append(1 if incoming[4 * i + 3] else -1)
        self._signs = tuple(signs)

    def _numbering_direction(self, steps) -> int:
        arcs = [self.arc(b) for _, b in steps]
        fwd = sum(1 for x, y in zip(arcs, arcs[1:] + arcs[:1]) if y == x + 1)
        back = sum(1 for x, y in zip(arcs, arcs[1:] + arcs[:1]) if x == y + 1)
        if fwd != back:
            return 1 if fwd > back else -1
        # two-arc component: run out of the crossing where the smaller arc leaves
        return 1 if arcs[0] <= arcs[-1] else -1

    @property
    def components(self) -> list:
        """Each component as a list of arc labels in traversal order."""
        return [[self.arc(b) for _, b in st] for st in self._components]

    def component_steps(self) -> list:
        return [list(st) for st in self._components]

    def is_incoming(self, d: int) -> bool:
        return bool(self._incoming[d])

    def sign(self, i: int) -> int:
        return self._signs[i]

    @property
    def signs(self) -> tuple:
        return self._signs

    def writhe(self) -> int:
        return sum(self._signs)

    def crossing_number(self) -> int:
        return self.n

    # -- colouring and crossing types ---------------------------------
    def face_adjacency(self) -> list:
        pairs = set()
        for d in range(4 * self.n):
            a, b = self._face_of[d], self._face_of[self._alpha[d]]
            pairs.add((min(a, b), max(a, b)))
        return sorted(pairs)

    def _bipartition(self) -> Optional[list]:
        side = [None] * self.num_faces
        adj = [[] for _ in range(self.num_faces)]
        for a, b in self.face_adjacency():
            if a == b:
                return None
            adj[a].append(b)
            adj[b].append(a)
        for root in range(self.num_faces):
            if side[root] is not None:
                continue
            side[root] = True
            queue = deque([root])
            while queue:
                f = queue.popleft()
                for g in adj[f]:
                    if side[g] is None:
                        side[g] = not side[f]
                        queue.append(g)
                    elif side[g] == side[f]:
                        return None
        return side

    def is_colourable(self) -> bool:
        return self._bipartition() is not None

    def checkerboard_colour(self) -> Colouring:
        side = self._bipartition()
        if side is None:
            raise NotCheckerboardColourable("face adjacency graph is not bipartite")
        col = Colouring(tuple(side))
        types = {self.colour_type(i, col) for i in range(self.n)}
        if len(types) == 1:
            return col if types == {"A"} else col.swapped()
        # not alternating: black is the face left of the lowest arc
        a = min(self.arc_ends)
        d = next(x for x in self.arc_ends[a] if not self._incoming[x])
        left = self._face_of[self._alpha[d]]
        return col if col.black[left] else col.swapped()

    def is_alternating(self) -> bool:
        side = self._bipartition()
        if side is None:
            return False
        col = Colouring(tuple(side))
        return len({self.colour_type(i, col) for i in range(self.n)}) == 1

    def black_corners(self, i: int, c: Colouring) -> tuple:
        if c.black[self.corner_face(i, 1)]:
            return (1, 3)
        return (0, 2)

    def colour_type(self, i: int, c: Colouring) -> str:
        # corners 1 and 3 are swept when the over-strand turns counterclockwise
        return "A" if c.black[self.corner_face(i, 1)] else "B"

    def merged_corners(self, i: int) -> tuple:
        """Corners joined by the oriented smoothing."""
        return (1, 3) if self._signs[i] > 0 else (0, 2)

    def classify_crossings(self, c: Optional[Colouring] = None) -> list:
        c = c or self.checkerboard_colour()
        out = []
        for i in range(self.n):
            ct = self.colour_type(i, c)
            ot = "II" if self.black_corners(i, c) == self.merged_corners(i) else "I"
            out.append(CrossingClass(ct, ot, 1 if ct == "A" else -1, self._signs[i]))
        return out

    def correction_terms(self, c: Optional[Colouring] = None) -> tuple:
        """``(mu_black, mu_white)``."""
        cls = self.classify_crossings(c)
        mu_b = sum(x.eta for x in cls if x.orientation_type == "II")
        mu_w = -sum(x.eta for x in cls if x.orientation_type == "I")
        return mu_b, mu_w

    def nugatory_crossings(self) -> list:
        """Crossings met by a separating curve that misses the rest of the diagram.

        Two opposite corners sharing a face give a curve through the crossing.
        On a surface that curve need not separate, so we also ask that deleting
        the crossing cut the diagram between the two pairs of slots the curve
        splits off.
        """
        out = []
        for i in range(self.n):
            f = [self.corner_face(i, k) for k in range(4)]
            for k in (0, 1):
                if f[k] == f[k + 2] and self._splits(i, {(k + 1) % 4, (k + 2) % 4}):
                    out.append(self.crossings[i].id)
                    break
        return out

    def _splits(self, i: int, side: set) -> bool:
        """Does removing crossing ``i`` disconnect its slots in ``side`` from the others?"""
        start = [4 * i + s for s in side]
        seen = set()
        stack = []
        for d in start:
            stack.append(self._alpha[d])
        reached = set()
        while stack:
            d = stack.pop()
            j = d // 4
            if j == i:
                reached.add(d % 4)
                continue
            if j in seen:
                continue
            seen.add(j)
            for s in range(4):
                stack.append(self._alpha[4 * j + s])
        return reached <= side

    def is_reduced(self, c: Optional[Colouring] = None) -> bool:
        return not self.nugatory_crossings()

    # -- simple transforms ---------------------------------------------
    def crossing_changed(self, ids) -> "SurfaceDiagram":
        ids = {str(x) for x in ids}
        new = []
        for i, c in enumerate(self.crossings):
            s = c.slots
            if c.id in ids:
                # the old over-strand becomes the under-strand; start at its incoming end
                s = (s[3], s[0], s[1], s[2]) if self._incoming[4 * i + 3] else (s[1], s[2], s[3], s[0])
            new.append(Crossing(c.id, tuple(s)))
        return SurfaceDiagram(new, name=self.name)

    def mirror(self) -> "SurfaceDiagram":
        return self.crossing_changed([c.id for c in self.crossings])

    def relabelled(self) -> "SurfaceDiagram":
        """Arcs renumbered 1..2n consecutively along components."""
        mapping = {}
        k = 1
        for st in self._components:
            for _, b in st:
                a = self.arc(b)
                if a not in mapping:
                    mapping[a] = k
                    k += 1
        return SurfaceDiagram([Crossing(c.id, tuple(mapping[a] for a in c.slots)) for c in self.crossings],
                              name=self.name)

    # -- serialisation --------------------------------------------------
    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        for c in self.crossings:
            lines.append("crossing {} {}".format(c.id, " ".join(str(a) for a in c.slots)))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"name": self.name,
                "crossings": [{"id": c.id, "slots": list(c.slots)} for c in self.crossings]}

    def pd_code(self) -> list:
        return [list(c.slots) for c in self.crossings]

    def __repr__(self):
        return f"SurfaceDiagram({self.name or ''!s}, n={self.n}, g={self.genus})"


# ---------------------------------------------------------------------------
# parsing

_LINE = re.compile(r"^\s*crossing\s+(\S+)\s+(.*)$")


def parse_diagram(text: str, *, name: Optional[str] = None, fmt: str = "text") -> SurfaceDiagram:
    if fmt == "json":
        return _parse_json(text, name)
    crossings = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: expected 'crossing <id> a0 a1 a2 a3', got {raw.strip()!r}")
        toks = m.group(2).split()
        if len(toks) != 4:
            raise ParseError(f"line {lineno}: crossing {m.group(1)} needs 4 arcs, got {len(toks)}")
        try:
            arcs = tuple(_arc_label(t) for t in toks)
        except ValueError:
            raise ParseError(f"line {lineno}: arc ids must be positive integers") from None
        if any(a <= 0 for a in arcs):
            raise ParseError(f"line {lineno}: arc ids must be positive integers")
        crossings.append(Crossing(m.group(1), arcs))
    if not crossings:
        raise ParseError("no crossings found")
    return SurfaceDiagram(crossings, name=name)


def _parse_json(text: str, name):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if isinstance(data, dict):
        name = data.get("name", name)
        items = data.get("crossings")
    else:
        items = data
    if not isinstance(items, list) or not items:
        raise ParseError("JSON diagram needs a non-empty 'crossings' list")
    crossings = []
    for k, item in enumerate(items):
        if isinstance(item, dict):
            cid, slots = item.get("id", k + 1), item.get("slots")
        else:
            cid, slots = k + 1, item
        if not isinstance(slots, list) or len(slots) != 4:
            raise ParseError(f"crossing {cid}: 'slots' must list 4 arcs")
        try:
            arcs = tuple(int(a) for a in slots)
        except (TypeError, ValueError):
            raise ParseError(f"crossing {cid}: arc ids must be integers") from None
        crossings.append(Crossing(str(cid), arcs))
    return SurfaceDiagram(crossings, name=name)


def load_diagram(path) -> SurfaceDiagram:
    from pathlib import Path

    p = Path(path)
    fmt = "json" if p.suffix == ".json" else "text"
    return parse_diagram(p.read_text(encoding="utf-8"), name=p.stem, fmt=fmt)


def from_pd(pd: Sequence[Sequence[int]], name: Optional[str] = None) -> SurfaceDiagram:
    return SurfaceDiagram([Crossing(str(i + 1), tuple(x)) for i, x in enumerate(pd)], name=name)


# ---------------------------------------------------------------------------
# disc mutation

_SWAPS = {"pi": (2, 3, 0, 1), "h": (3, 2, 1, 0), "v": (1, 0, 3, 2)}


def _tangle_sides(d: SurfaceDiagram, spec: TangleSpec):
    inside = set()
    for cid in spec.crossings:
        if str(cid) not in d._index:
            raise DiagramError(f"tangle names unknown crossing {cid}")
        inside.add(d.index(cid))
    boundary = []
    for a, (d1, d2) in sorted(d.arc_ends.items()):
        if (d1 // 4 in inside) != (d2 // 4 in inside):
            boundary.append(a)
    if len(boundary) != 4 or sorted(boundary) != sorted(spec.boundary):
        raise BoundaryNotFour(f"tangle meets {len(boundary)} arcs {boundary}; spec lists {list(spec.boundary)}")
    return inside


def check_disc(d: SurfaceDiagram, spec: TangleSpec) -> None:
    """Raise ``NotADisc`` unless the tangle region is a disc with the given boundary order.

    The tangle's crossings, the arcs between them and four dangling ends form a
    ribbon graph. It must be connected with genus zero, and all four ends must
    lie on a single face in the stated cyclic order.
    """
    inside = _tangle_sides(d, spec)
    if not inside:
        return
    inner = sorted(inside)
    pos = {i: k for k, i in enumerate(inner)}
    # vertices: tangle crossings, then one leaf per boundary arc
    leaf = {a: len(inner) + k for k, a in enumerate(spec.boundary)}
    edges, rot = [], [[None] * 4 for _ in inner] + [[] for _ in spec.boundary]
    done = set()
    for i in inner:
        for s in range(4):
            dart = 4 * i + s
            if dart in done:
                continue
            other = d.other_end(dart)
            e = len(edges)
            if other // 4 in inside:
                edges.append((pos[i], pos[other // 4]))
                rot[pos[i]][s] = 2 * e
                rot[pos[other // 4]][other % 4] = 2 * e + 1
                done.add(other)
            else:
                lv = leaf[d.arc(dart)]
                edges.append((pos[i], lv))
                rot[pos[i]][s] = 2 * e
                rot[lv].append(2 * e + 1)
            done.add(dart)
    from .embgraph import EmbeddedGraph

    g = EmbeddedGraph(len(inner) + 4, edges, rot)
    if not g.is_connected():
        raise NotADisc("tangle region is not connected")
    if g.genus != 0:
        raise NotADisc(f"tangle region carries genus {g.genus}")
    leaf_darts = {rot[leaf[a]][0]: a for a in spec.boundary}
    for walk in g.facial_walks():
        hits = [leaf_darts[h] for h in walk if h in leaf_darts]
        if len(hits) == 4:
            # order around the outer face, read clockwise inside the region,
            # equals the counterclockwise order around the tangle from outside
            k = hits.index(spec.boundary[0])
            cyc = hits[k:] + hits[:k]
            if cyc != list(spec.boundary) and cyc != [cyc[0]] + list(reversed(spec.boundary[1:])):
                raise NotADisc("boundary arcs are not in cyclic order around the tangle")
            return
    raise NotADisc("boundary arcs do not lie on one face of the tangle region")


def mutate(d: SurfaceDiagram, spec: TangleSpec, *, return_map: bool = False):
    """Cut out the tangle, apply the involution and reglue.

    Boundary arcs ``b0..b3`` are read in cyclic order. ``pi`` swaps b0<->b2 and
    b1<->b3, ``h`` swaps b0<->b3 and b1<->b2, ``v`` swaps b0<->b1 and b2<->b3.
    The flips reflect the tangle, which reverses every inner crossing's slot
    order and swaps over with under so the crossing keeps its A/B type.
    """
    check_disc(d, spec)
    inside = {d.index(c) for c in spec.crossings}
    if not inside:
        out = d.relabelled()
        return (out, {}) if return_map else out
    tau = _SWAPS[spec.involution]
    flip = spec.involution in ("h", "v")
    b = list(spec.boundary)
    # each boundary arc has one inner end and one outer end
    inner_end, outer_end = {}, {}
    for a in b:
        d1, d2 = d.arc_ends[a]
        if d1 // 4 in inside:
            inner_end[a], outer_end[a] = d1, d2
        else:
            inner_end[a], outer_end[a] = d2, d1
    # new slot contents, with fresh labels: ("arc", a) for untouched arcs,
    # ("b", k) for the reglued boundary arc joining inner b_k to outer b_tau(k)
    slots = [[("arc", a) for a in c.slots] for c in d.crossings]
    for k, a in enumerate(b):
        dart = inner_end[a]
        slots[dart // 4][dart % 4] = ("b", k)
        dart = outer_end[b[tau[k]]]
        slots[dart // 4][dart % 4] = ("b", k)
    # orientation of each new strand piece: decide by walking; build geometry first
    if flip:
        for i in inside:
            s = slots[i]
            slots[i] = [s[0], s[3], s[2], s[1]]  # reflected counterclockwise order
    # under-strand after a flip is the old over-strand, now slots 1 and 3
    geom = []
    for i in range(d.n):
        under_pair = (1, 3) if (flip and i in inside) else (0, 2)
        geom.append((slots[i], under_pair))
    labels, crossings, arc_map = _orient_and_label(d, geom, inside, flip, b)
    out = SurfaceDiagram(crossings, name=d.name)
    return (out, arc_map) if return_map else out


def _orient_and_label(d, geom, inside, flip, boundary):
    """Choose directions for every strand and emit slot-0-first crossings.

    Outside arcs keep their directions. Inner strands take the direction of
    the outside arcs they join; closed inner components keep theirs.
    """
    n = d.n
    # ends of each new label
    ends: dict = {}
    for i, (s, _) in enumerate(geom):
        for k, lab in enumerate(s):
            ends.setdefault(lab, []).append(4 * i + k)
    alpha = {}
    for lab, (x, y) in ends.items():
        alpha[x], alpha[y] = y, x

    def opp(x):
        return x - x % 4 + (x + 2) % 4

    # old incoming info, transported to the new slot positions
    old_in = {}
    for i in range(n):
        for k in range(4):
            old_in[(i, k)] = d.is_incoming(4 * i + k)
    new_in = {}
    for i in range(n):
        for k in range(4):
            src = k
            if flip and i in inside:
                src = (0, 3, 2, 1)[k]
            new_in[4 * i + k] = old_in[(i, src)]
    # walk each new component; prefer directions coming from outside crossings
    seen = set()
    incoming = {}
    for start in range(4 * n):
        if start in seen:
            continue
        steps = []
        x = start
        while True:
            y = opp(x)
            seen.add(x)
            seen.add(y)
            steps.append((x, y))
            x = alpha[y]
            if x == start:
                break
        votes = [1 if new_in[a] else -1 for a, _ in steps if a // 4 not in inside]
        if votes:
            direction = votes[0]
            assert all(v == direction for v in votes), "outside orientation must be coherent"
        else:
            direction = 1 if new_in[steps[0][0]] else -1
        for a, bb in steps:
            incoming[a] = direction > 0
            incoming[bb] = direction < 0
    # emit crossings with slot 0 at the incoming under end
    labels = {lab: None for lab in ends}
    crossings = []
    arc_map = {}
    # number arcs along components for readability
    counter = 1
    order = []
    seen = set()
    for start in sorted(range(4 * n), key=lambda z: (not incoming[z], z)):
        if start in seen or not incoming[start]:
            continue
        x = start
        while x not in seen:
            y = opp(x)
            seen.add(x)
            seen.add(y)
            lab = geom[y // 4][0][y % 4]
            if labels[lab] is None:
                labels[lab] = counter
                counter += 1
            x = alpha[y]
    for i, (s, under) in enumerate(geom):
        u0, u1 = under
        first = u0 if incoming[4 * i + u0] else u1
        rot = [s[(first + k) % 4] for k in range(4)]
        crossings.append(Crossing(d.crossings[i].id, tuple(labels[lab] for lab in rot)))
    for lab, new in labels.items():
        arc_map[boundary[lab[1]] if lab[0] == "b" else lab[1]] = new
    return labels, crossings, arc_map


def diagram_isomorphism(d1: SurfaceDiagram, d2: SurfaceDiagram) -> Optional[dict]:
    """Crossing map ``i -> j`` carrying slot ``k`` of ``i`` to slot ``k`` of ``j``.

    Arc labels are ignored. Returns ``None`` when the diagrams differ.
    """
    if d1.n != d2.n:
        return None
    for j0 in range(d2.n):
        m = {0: j0}
        stack = [0]
        ok = True
        while stack and ok:
            i = stack.pop()
            j = m[i]
            for k in range(4):
                o1 = d1.other_end(4 * i + k)
                o2 = d2.other_end(4 * j + k)
                if o1 % 4 != o2 % 4:
                    ok = False
                    break
                a, b = o1 // 4, o2 // 4
                if a in m:
                    if m[a] != b:
                        ok = False
                        break
                else:
                    m[a] = b
                    stack.append(a)
        if ok and len(set(m.values())) == d1.n:
            return m
    return None


def alternating_diagram(g, name: Optional[str] = None) -> SurfaceDiagram:
    """The alternating diagram whose black Tait graph is the embedded graph ``g``.

    One crossing per edge, placed at its midpoint; one arc per corner of
    ``g``. Every crossing comes out type A with ``g`` black, and crossing ids
    are the edge labels of ``g``.
    """
    E = g.num_edges
    prev = [0] * (2 * E)
    for h in range(2 * E):
        prev[g.rot_next(h)] = h
    # arc label of the corner that follows dart h counterclockwise is h + 1
    raw = []
    for e in range(E):
        d, dd = 2 * e, 2 * e + 1
        raw.append([prev[dd] + 1, d + 1, prev[d] + 1, dd + 1])  # NE, NW, SW, SE
    # orient every medial component, then put the incoming under end in slot 0
    ends: dict = {}
    for i, s in enumerate(raw):
        for k, a in enumerate(s):
            ends.setdefault(a, []).append(4 * i + k)
    alpha = {}
    for a, (x, y) in ends.items():
        alpha[x], alpha[y] = y, x
    incoming = {}
    for start in range(4 * E):
        if start in incoming:
            continue
        x = start
        while x not in incoming:
            y = x - x % 4 + (x + 2) % 4
            incoming[x], incoming[y] = True, False
            x = alpha[y]
    crossings = []
    for i, s in enumerate(raw):
        if not incoming[4 * i]:
            s = s[2:] + s[:2]
        crossings.append(Crossing(str(g.labels[i]), tuple(s)))
    return SurfaceDiagram(crossings, name=name).relabelled()
