"""Regenerate the diagram fixtures under tests/fixtures.

Run from the repository root:  python tools/make_fixtures.py

Everything here is deterministic (fixed seeds, sorted enumeration), so a rerun
reproduces the committed files byte for byte.
"""
import itertools
import json
import random
import shutil
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))
sys.path.insert(0, str(HERE.parent / "tests"))

from graphs import from_gadget, substitute, whitney_flip  # noqa: E402
from helpers import fox_alexander, is_monomial, kauffman_bracket  # noqa: E402

from surflat import intlat  # noqa: E402
from surflat.diagram import (BoundaryNotFour, NotADisc, TangleSpec, alternating_diagram,  # noqa: E402
                             check_disc, diagram_isomorphism, from_pd, mutate)
from surflat.embgraph import EmbeddedGraph  # noqa: E402
from surflat.glform import mock_seifert  # noqa: E402

OUT = HERE.parent / "tests" / "fixtures"

CLASSICAL_PD = {
    "3_1": [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]],
    "4_1": [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
    "5_1": [[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]],
    "5_2": [[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]],
    "6_1": [[1, 4, 2, 5], [7, 10, 8, 11], [3, 9, 4, 8], [9, 3, 10, 2], [5, 12, 6, 1], [11, 6, 12, 7]],
    "6_2": [[1, 4, 2, 5], [5, 10, 6, 11], [3, 9, 4, 8], [9, 3, 10, 2], [7, 12, 8, 1], [11, 6, 12, 7]],
    "6_3": [[4, 2, 5, 1], [8, 4, 9, 3], [12, 9, 1, 10], [10, 5, 11, 6], [6, 11, 7, 12], [2, 8, 3, 7]],
    "7_1": [[1, 8, 2, 9], [3, 10, 4, 11], [5, 12, 6, 13], [7, 14, 8, 1], [9, 2, 10, 3], [11, 4, 12, 5],
            [13, 6, 14, 7]],
}

# K4 drawn in the plane: vertex 3 in the middle of triangle 0-1-2
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
K4_ROT = [[0, 2, 4], [1, 8, 6], [3, 7, 10], [5, 11, 9]]

PRETZEL = ("P", [("S", ["e"] * 3), ("S", ["e"] * 2)])
TWIST = ("S", ["e"] * 2)

GENUS2_AB = {
    "k6_90101": [[2, -1, 0, 0], [1, 1, 0, 0], [0, 0, 2, -1], [0, 0, 1, 1]],
    "k6_90124": [[2, -1, 0, -1], [1, 1, 0, 1], [0, 0, 2, -1], [1, -1, 1, 1]],
}


def write(path: Path, d, comment: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(f"# {comment}\n" + d.to_text())


def header(text):
    print(f"== {text}")


def kt_conway():
    """11 crossings on the octahedral shadow: a (3,2) pretzel tangle and a 2-twist.

    The Tait graph is K4 with one edge replaced by the pretzel gadget and an
    adjacent edge by two edges in series; the pretzel crossings are switched.
    """
    k4 = EmbeddedGraph(4, K4_EDGES, K4_ROT)
    assert k4.genus == 0
    g1, pre = substitute(k4, 0, PRETZEL)
    g2, _ = substitute(g1, 0, TWIST)
    pre = [x - 1 for x in pre]
    d = alternating_diagram(g2, name="kinoshita_terasaka").crossing_changed([str(x) for x in pre])
    assert len(d.components) == 1 and d.genus == 0
    assert fox_alexander(d) == (1,), "expected trivial Alexander polynomial"
    assert not is_monomial(kauffman_bracket(d)), "expected a non-trivial knot"
    spec = find_spec(d, [str(x) for x in pre], "pi")
    m = mutate(d, spec)
    assert diagram_isomorphism(d, m) is None
    assert fox_alexander(m) == (1,)
    return d, spec


def find_spec(d, ids, involution):
    inside = {d.index(c) for c in ids}
    bd = [a for a, (x, y) in sorted(d.arc_ends.items()) if (x // 4 in inside) != (y // 4 in inside)]
    if len(bd) != 4:
        return None
    for perm in itertools.permutations(bd[1:]):
        spec = TangleSpec(tuple(ids), (bd[0],) + perm, involution)
        try:
            check_disc(d, spec)
            return spec
        except NotADisc:
            continue
    return None


def tangle_specs(d, sizes=(2, 3)):
    """Disc tangles of the given sizes whose mutant is a different diagram."""
    found = []
    ids = [c.id for c in d.crossings]
    for k in sizes:
        for sub in itertools.combinations(ids, k):
            for inv in ("pi", "h", "v"):
                try:
                    spec = find_spec(d, list(sub), inv)
                except BoundaryNotFour:
                    spec = None
                if spec is None:
                    continue
                m = mutate(d, spec)
                if diagram_isomorphism(d, m) is None:
                    found.append(spec)
    return found


def spec_text(spec):
    return (f"crossings={','.join(spec.crossings)} boundary={','.join(str(a) for a in spec.boundary)} "
            f"involution={spec.involution}\n")


def random_surface_diagrams(rng, want):
    """Alternating diagrams from random rotation systems, filtered by genus."""
    got = {g: [] for g in want}
    tries = 0
    while any(len(got[g]) < n for g, n in want.items()):
        tries += 1
        nv = rng.randint(1, 4)
        ne = rng.randint(nv + 2, 7)
        edges = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(ne)]
        rot = [[] for _ in range(nv)]
        for e, (a, b) in enumerate(edges):
            rot[a].append(2 * e)
            rot[b].append(2 * e + 1)
        if any(not r for r in rot):
            continue
        for r in rot:
            rng.shuffle(r)
        g = EmbeddedGraph(nv, edges, rot)
        if not g.is_connected() or g.genus not in want or len(got[g.genus]) >= want[g.genus]:
            continue
        d = alternating_diagram(g)
        if d.nugatory_crossings() or len(d.components) > 2:
            continue
        if any(diagram_isomorphism(d, x) for x in got[g.genus]):
            continue
        got[g.genus].append(d)
    return got


def genus2_pair():
    """Alternating genus 2 knots whose black mock Seifert matrices match the example pair.

    Black Tait graph: three vertices, two double edges along a path and two
    loops; the single-face condition forces genus 2.
    """
    result = {}
    for loops in [(0, 0), (0, 1), (0, 2), (1, 1)]:
        edges = [(0, 1), (0, 1), (1, 2), (1, 2)] + [(v, v) for v in loops]
        darts = [[] for _ in range(3)]
        for e, (a, b) in enumerate(edges):
            darts[a].append(2 * e)
            darts[b].append(2 * e + 1)
        per = [[[r[0]] + list(p) for p in itertools.permutations(r[1:])] for r in darts]
        for rot in itertools.product(*per):
            g = EmbeddedGraph(3, edges, rot)
            if g.num_faces != 1:
                continue
            d = alternating_diagram(g)
            if len(d.components) != 1:
                continue
            A = mock_seifert(d, None, "b").A
            for name, target in GENUS2_AB.items():
                if name in result or abs(intlat.det(A)) != abs(intlat.det(target)):
                    continue
                if intlat.unimodular_congruent(A, target).status == "yes":
                    result[name] = d
            if len(result) == 2:
                return result
    return result


def flype_pairs():
    """Planar series-parallel Tait graphs; the second diagram flips the block H + e."""
    gadgets = [
        # (rest R, tangle H)
        (("S", ["e"] * 3), ("S", [("P", ["e", "e"]), "e"])),
        (("S", ["e", "e"]), ("S", [("P", ["e", "e", "e"]), "e"])),
        (("S", ["e"] * 3), ("S", [("P", ["e", ("S", ["e", "e"])]), "e"])),
        (("S", [("P", ["e", "e"]), "e"]), ("S", [("P", ["e", "e"]), "e", "e"])),
        (("S", ["e"] * 4), ("S", [("P", ["e", "e"]), ("P", ["e", "e"])])),
        (("S", ["e", ("P", ["e", "e"])]), ("S", [("P", ["e", "e", "e"]), "e"])),
    ]
    pairs = []
    for R, H in gadgets:
        g, new = from_gadget(("P", [R, H, "e"]))
        nr = _count(R)
        block = new[nr:]
        g2 = whitney_flip(g, block)
        assert g.genus == 0 and g2.genus == 0
        d1, d2 = alternating_diagram(g), alternating_diagram(g2)
        if len(d1.components) != 1:
            continue
        if diagram_isomorphism(d1, d2) is not None or d1.nugatory_crossings():
            continue
        assert fox_alexander(d1) == fox_alexander(d2)
        pairs.append((d1, d2))
    return pairs


def _count(gd):
    if gd == "e":
        return 1
    return sum(_count(p) for p in gd[1])


def main():
    for sub in ("classical", "surface", "mutation", "flype", "genus2", "catalog"):
        shutil.rmtree(OUT / sub, ignore_errors=True)

    header("classical knots")
    classical = {}
    for name, pd in CLASSICAL_PD.items():
        d = from_pd(pd, name=name)
        classical[name] = d
        write(OUT / "classical" / f"{name}.txt", d, f"classical knot {name}")

    header("random surface diagrams")
    rng = random.Random(20240611)
    surf = random_surface_diagrams(rng, {0: 3, 1: 6, 2: 5})
    surface = {}
    for g, ds in surf.items():
        for k, d in enumerate(ds):
            name = f"g{g}_{k}"
            surface[name] = d
            write(OUT / "surface" / f"{name}.txt", d,
                  f"alternating, genus {g}, {d.n} crossings, {len(d.components)} component(s)")
    # a few non-alternating ones: switch one crossing
    switched = {}
    for name in ("g1_0", "g1_1", "g2_0", "g2_1"):
        d = surface[name]
        nd = d.crossing_changed([d.crossings[0].id])
        if nd.nugatory_crossings():
            continue
        switched[f"{name}_x"] = nd
        write(OUT / "surface" / f"{name}_x.txt", nd, f"{name} with crossing {d.crossings[0].id} switched")

    header("mutation fixtures")
    kt, kt_spec = kt_conway()
    write(OUT / "mutation" / "kinoshita_terasaka.txt", kt,
          "11 crossings, trivial Alexander polynomial; its pretzel mutant is the Conway knot")
    (OUT / "mutation" / "kinoshita_terasaka.tangle").write_text(spec_text(kt_spec))
    (OUT / "mutation" / "conway_h.tangle").write_text(spec_text(find_spec(kt, list(kt_spec.crossings), "h")))
    write(OUT / "mutation" / "conway_h.txt", kt, "same diagram as kinoshita_terasaka, flipped instead of rotated")
    pool = [(n, classical[n]) for n in ("6_1", "6_2", "6_3", "7_1")]
    pool += [(n, surface[n]) for n in sorted(surface) if surface[n].n >= 5]
    pool += [(n, switched[n]) for n in sorted(switched)]
    pool += sorted(genus2_pair().items())
    pool += [(f"flype{k}", a) for k, (a, _) in enumerate(flype_pairs())]
    count = 2
    wanted = ["pi", "h", "v"]
    for name, d in pool:
        if len(d.components) != 1:
            continue  # link mutants may need a component reversed, which moves the writhe
        specs = tangle_specs(d, sizes=(2, 3, 4))
        if not specs:
            continue
        pref = wanted[count % 3]
        spec = next((s for s in specs if s.involution == pref), specs[0])
        write(OUT / "mutation" / f"{name}.txt", d, f"copy of {name} for mutation tests")
        (OUT / "mutation" / f"{name}.tangle").write_text(spec_text(spec))
        count += 1
        if count >= 14:
            break
    print("mutation fixtures:", count)

    header("flype pairs")
    for k, (a, b) in enumerate(flype_pairs()):
        write(OUT / "flype" / f"p{k}_a.txt", a, f"flype pair {k}, first diagram")
        write(OUT / "flype" / f"p{k}_b.txt", b, f"flype pair {k}, block H + e reflected")

    header("genus 2 example pair")
    for name, d in genus2_pair().items():
        write(OUT / "genus2" / f"{name}.txt", d,
              "alternating genus 2 knot, black mock Seifert matrix congruent to the example's")

    header("batch catalog")
    names = ["3_1", "4_1", "5_2"]
    for n in names:
        write(OUT / "catalog" / f"{n}.txt", classical[n], f"classical knot {n}")
    for n in sorted(surface)[:6]:
        write(OUT / "catalog" / f"{n}.txt", surface[n], f"surface diagram {n}")
    (OUT / "catalog" / "virtual_kink.txt").write_text(
        "# one classical crossing whose strands wrap a torus; faces cannot be two-coloured\n"
        "crossing 1 1 2 1 2\n")
    (OUT / "catalog" / "README").write_text("not a diagram; batch runs must skip this file\n")

    manifest = {p.relative_to(OUT).as_posix(): len(p.read_bytes())
                for p in sorted(OUT.rglob("*")) if p.is_file()}
    print(json.dumps({"files": len(manifest)}))


if __name__ == "__main__":
    main()
