"""Small builders for planar rotation systems used to author fixtures."""
from surflat.embgraph import EmbeddedGraph


class RotationBuilder:
    """Grow a rotation system edge by edge.

    ``rot[v]`` is the counterclockwise dart list at ``v``. New darts are
    spliced in place of an existing dart, so planar gadgets stay planar.
    """

    def __init__(self, num_vertices=0):
        self.nv = num_vertices
        self.edges = []
        self.rot = [[] for _ in range(num_vertices)]

    def add_vertex(self):
        self.rot.append([])
        self.nv += 1
        return self.nv - 1

    def add_edge(self, a, b):
        e = len(self.edges)
        self.edges.append((a, b))
        return e

    def graph(self):
        return EmbeddedGraph(self.nv, self.edges, self.rot)


def substitute(g, edge, gadget):
    """Replace ``edge`` of the planar graph ``g`` by a series-parallel gadget.

    ``gadget`` is ``("P", [branch, ...])`` for branches in parallel or
    ``("S", [part, ...])`` for parts in series; a leaf is the string ``"e"``.
    Returns ``(graph, new_edge_ids)``; the other edges keep their index order.
    """
    rb = RotationBuilder(g.num_vertices)
    # old edges except the replaced one keep their relative order
    for v in range(g.num_vertices):
        rb.rot[v] = [("old", h) for h in g.rotation[v]]
    keep = [e for e in range(g.num_edges) if e != edge]
    for e in keep:
        rb.add_edge(*g.edges[e])
    u, w = g.edges[edge]
    new_edges = []

    def build(gd, a, b):
        """Return (darts at a in ccw order, darts at b in ccw order)."""
        if gd == "e":
            e = rb.add_edge(a, b)
            new_edges.append(e)
            return [("new", 2 * e)], [("new", 2 * e + 1)]
        kind, parts = gd
        if kind == "P":
            at_a, at_b = [], []
            for p in parts:
                x, y = build(p, a, b)
                at_a += x
                at_b = y + at_b
            return at_a, at_b
        # series: chain through fresh vertices
        cur, first, last = a, None, None
        for k, p in enumerate(parts):
            nxt = b if k == len(parts) - 1 else rb.add_vertex()
            x, y = build(p, cur, nxt)
            if k == 0:
                first = x
            else:
                rb.rot[cur] = last + x
            last = y
            cur = nxt
        return first, last

    at_u, at_w = build(gadget, u, w)
    # splice
    for v, h, darts in ((u, 2 * edge, at_u), (w, 2 * edge + 1, at_w)):
        r = rb.rot[v]
        i = r.index(("old", h))
        rb.rot[v] = r[:i] + darts + r[i + 1:]
    # translate dart names
    renum = {}
    for k, e in enumerate(keep):
        renum[2 * e], renum[2 * e + 1] = 2 * k, 2 * k + 1
    rot = []
    for v in range(rb.nv):
        rot.append([renum[h] if tag == "old" else h for tag, h in rb.rot[v]])
    return EmbeddedGraph(rb.nv, rb.edges, rot), new_edges


def from_gadget(gadget):
    """Planar graph on two poles joined by a series-parallel gadget."""
    base = EmbeddedGraph(2, [(0, 1)], [[0], [1]])
    return substitute(base, 0, gadget)


def whitney_flip(g, block_edges):
    """Reflect the block ``block_edges`` hanging off a 2-separation.

    The block's darts must be contiguous at both attachment vertices; its
    other vertices get their rotations reversed.
    """
    block = set(block_edges)
    verts = {v for e in block for v in g.edges[e]}
    outside = {v for e in range(g.num_edges) if e not in block for v in g.edges[e]}
    poles = verts & outside
    if len(poles) != 2:
        raise ValueError("block is not attached along a 2-separation")
    rot = []
    for v in range(g.num_vertices):
        r = list(g.rotation[v])
        if v in verts and v not in poles:
            r.reverse()
        elif v in poles:
            mine = [i for i, h in enumerate(r) if h >> 1 in block]
            # rotate so the block occupies one interval starting at 0
            k = next(i for i in mine if (i - 1) % len(r) not in mine)
            r = r[k:] + r[:k]
            m = len(mine)
            if any(r[i] >> 1 not in block for i in range(m)):
                raise ValueError("block darts are not contiguous")
            r = r[:m][::-1] + r[m:]
        rot.append(r)
    return EmbeddedGraph(g.num_vertices, g.edges, rot, g.labels)
