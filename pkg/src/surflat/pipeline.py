"""Invariant bundles, staged comparison, persistence and batch runs."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import cutflow, dinv, glform, intlat, poly
from .diagram import DiagramError, SurfaceDiagram, load_diagram
from .embgraph import tait_graphs
from .intlat import IntegerLattice

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
LATTICE_NAMES = ("flow-b", "flow-w", "flow0-b", "flow0-w", "cut-b", "cut-w")

LATTICE_EQUIVALENT = "lattice-equivalent"
LINKING_FORM_DISTINGUISHED = "linking-form-distinguished"
LATTICE_DISTINGUISHED = "lattice-distinguished"
UNKNOWN = "unknown"


def diagram_digest(d: SurfaceDiagram) -> str:
    body = "\n".join(" ".join([c.id] + [str(a) for a in c.slots]) for c in d.crossings)
    return hashlib.sha256(body.encode()).hexdigest()[:16]


def norm_spectrum(gram) -> list:
    if not gram:
        return []
    top = intlat.generating_norm(gram)
    return [[k, v] for k, v in intlat.norm_counts(gram, top).items()]


def fingerprint(gram, dvals: Optional[list] = None) -> dict:
    """Cheap isometry-class summary used before any full isometry search."""
    fp = {"rank": len(gram), "det": intlat.det(gram) if gram else 1,
          "signature": intlat.sig(gram) if gram else 0, "norms": norm_spectrum(gram)}
    if dvals is not None:
        fp["d"] = [str(x) for x in sorted(dvals)]
    return fp


# ---------------------------------------------------------------------------
# bundles


@dataclass
class InvariantBundle:
    id: str
    digest: str = ""
    genus: Optional[int] = None
    crossing_number: Optional[int] = None
    writhe: Optional[int] = None
    components: Optional[int] = None
    alternating: Optional[bool] = None
    reduced: Optional[bool] = None
    lattices: dict = field(default_factory=dict)  # name -> {"gram", "basis", "fingerprint"}
    dinv: dict = field(default_factory=dict)  # name -> DInvariant.to_dict()
    gl: dict = field(default_factory=dict)  # "b"/"w" -> GLData.to_dict()
    errors: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "id": self.id, "digest": self.digest,
                "genus": self.genus, "crossing_number": self.crossing_number, "writhe": self.writhe,
                "components": self.components, "alternating": self.alternating, "reduced": self.reduced,
                "lattices": self.lattices, "dinv": self.dinv, "gl": self.gl, "errors": self.errors}

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantBundle":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
        keys = ("id", "digest", "genus", "crossing_number", "writhe", "components", "alternating",
                "reduced", "lattices", "dinv", "gl", "errors")
        return cls(**{k: data[k] for k in keys})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    def d_values(self, name: str) -> Optional[list]:
        D = self.dinv.get(name)
        if D is None:
            return None
        return sorted(Fraction(c["d"]) for c in D["cosets"])

    def colour_view(self, colour: str) -> dict:
        """Everything attached to one colour, for matching across bundles."""
        return {"flow": self.lattices.get(f"flow-{colour}"), "flow0": self.lattices.get(f"flow0-{colour}"),
                "cut": self.lattices.get(f"cut-{colour}"), "gl": self.gl.get(colour)}


def _lattice_entry(gl: cutflow.GraphLattice, D: Optional[dinv.DInvariant]) -> dict:
    return {"gram": gl.gram, "basis": gl.basis,
            "fingerprint": fingerprint(gl.gram, D.multiset() if D else None)}


def invariant_bundle(d: SurfaceDiagram, *, name: Optional[str] = None, with_dinv: bool = True) -> InvariantBundle:
    """Everything the comparison needs, for both colours. Per-item failures are recorded, not raised."""
    b = InvariantBundle(id=name or d.name or diagram_digest(d), digest=diagram_digest(d))
    b.genus = d.genus
    b.crossing_number = d.crossing_number()
    b.writhe = d.writhe()
    b.components = len(d.components)
    b.alternating = d.is_alternating()
    b.reduced = d.is_reduced()
    try:
        c = d.checkerboard_colour()
    except DiagramError as exc:
        b.errors["colouring"] = str(exc)
        return b
    black, white = tait_graphs(d, c)
    graphs = {"b": black, "w": white}
    for colour, g in graphs.items():
        for kind, fn in (("flow", cutflow.flow_lattice), ("flow0", cutflow.restricted_flow_lattice),
                         ("cut", cutflow.cut_lattice)):
            key = f"{kind}-{colour}"
            try:
                gl = fn(g)
                D = None
                if with_dinv:
                    D = dinv.d_invariant(gl.lattice)
                    b.dinv[key] = D.to_dict()
                b.lattices[key] = _lattice_entry(gl, D)
            except Exception as exc:  # recorded per item
                b.errors[key] = f"{type(exc).__name__}: {exc}"
        try:
            b.gl[colour] = glform.mock_seifert(d, c, colour).to_dict()
        except Exception as exc:
            b.errors[f"gl-{colour}"] = f"{type(exc).__name__}: {exc}"
    return b


def bundle_from_matrices(name: str, A_b, A_w, *, alternating: bool = True) -> InvariantBundle:
    """Bundle built from mock Seifert matrices alone.

    For alternating diagrams the black symmetrisation is the Gram matrix of
    the black flow lattice and the white one is its negative, so both flow
    lattices can be read off. Published white matrices sometimes use the
    opposite sign, so whichever of ``±S`` is positive definite is taken.
    Diagram statistics stay empty.
    """
    b = InvariantBundle(id=name, digest=hashlib.sha256(json.dumps([A_b, A_w]).encode()).hexdigest()[:16])
    b.alternating = alternating
    for colour, A in (("b", A_b), ("w", A_w)):
        S2, X2 = intlat.split_form(A)
        if any(x % 2 for r in S2 for x in r):
            raise ValueError(f"{name}: A and A^T disagree mod 2 off the diagonal")
        S = [[x // 2 for x in r] for r in S2]
        X = [[x // 2 for x in r] for r in X2]
        gl = glform.GLData(colour, intlat.as_matrix(A), S, X, 0)
        try:
            entry = gl.to_dict()
        except glform.ZeroPolynomial as exc:
            b.errors[f"gl-{colour}"] = f"ZeroPolynomial: {exc}"
            continue
        entry.pop("signature")
        entry.pop("mu")
        b.gl[colour] = entry
        if alternating:
            gram = S
            if not intlat.is_positive_definite(gram):
                gram = [[-x for x in r] for r in S]
            if intlat.is_positive_definite(gram):
                D = dinv.d_invariant_direct(gram)
                b.dinv[f"flow-{colour}"] = D.to_dict()
                b.lattices[f"flow-{colour}"] = {"gram": gram, "basis": None,
                                                "fingerprint": fingerprint(gram, D.multiset())}
            else:
                b.errors[f"flow-{colour}"] = "symmetrisation is not definite"
    return b


# ---------------------------------------------------------------------------
# comparison


@dataclass
class ComparisonVerdict:
    level: str
    invariant: str = ""
    witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"level": self.level, "invariant": self.invariant,
                "witnesses": self.witnesses, "notes": self.notes}


_GL_FIELDS = ("determinant", "alexander", "signature")


def _compare_colour(v1: dict, v2: dict):
    """Return ``(lattice_diffs, gl_diffs, unknowns)`` for one colour pairing."""
    lat, glx, unk = {}, {}, []
    for kind in ("flow", "flow0", "cut"):
        a, b = v1[kind], v2[kind]
        if a is None or b is None:
            continue
        if a["fingerprint"] != b["fingerprint"]:
            fa, fb = a["fingerprint"], b["fingerprint"]
            which = next(k for k in ("rank", "det", "signature", "norms", "d") if fa.get(k) != fb.get(k))
            lat[f"{kind}.{'determinant' if which == 'det' else which}"] = [fa.get(which), fb.get(which)]
            continue
        if a["gram"]:
            v = intlat.unimodular_congruent(a["gram"], b["gram"])
            if v.status == "no":
                lat[f"{kind}.isometry"] = [v.reason, v.reason]
            elif v.status == "unknown":
                unk.append(f"{kind}: isometry search inconclusive")
    g1, g2 = v1["gl"], v2["gl"]
    if g1 is not None and g2 is not None:
        for f in _GL_FIELDS:
            if f in g1 and f in g2 and g1[f] != g2[f]:
                glx[f] = [g1[f], g2[f]]
        if not glx:
            v = intlat.unimodular_congruent(g1["A"], g2["A"])
            if v.status == "no":
                glx["mock_seifert_congruence"] = [v.reason, v.reason]
            elif v.status == "unknown":
                unk.append("mock Seifert congruence inconclusive")
    return lat, glx, unk


def compare_bundles(b1: InvariantBundle, b2: InvariantBundle, *, diagram_stage: bool = True) -> ComparisonVerdict:
    """Staged comparison: diagram statistics, then lattices and d-invariants, then linking forms.

    Colours are matched both ways round and the better matching is kept,
    since colour normalisation can differ between related diagrams. With
    ``diagram_stage=False`` the crossing number and writhe check is skipped,
    which isolates what the lattices and linking forms can see.
    """
    notes = []
    # stage 1: crossing number and writhe, necessary only for reduced alternating diagrams
    stage1 = {}
    if diagram_stage and b1.reduced and b2.reduced and b1.alternating and b2.alternating:
        for f in ("crossing_number", "writhe"):
            v1, v2 = getattr(b1, f), getattr(b2, f)
            if v1 is not None and v2 is not None and v1 != v2:
                stage1[f] = [v1, v2]
    # stages 2 and 3
    best = None
    for swap in (False, True):
        lat, glx, unk = {}, {}, []
        for c1 in ("b", "w"):
            c2 = ({"b": "w", "w": "b"}[c1]) if swap else c1
            l, g, u = _compare_colour(b1.colour_view(c1), b2.colour_view(c2))
            lat.update({f"{c1}:{k}": v for k, v in l.items()})
            glx.update({f"{c1}:{k}": v for k, v in g.items()})
            unk += u
        score = (len(lat), len(glx), len(unk))
        if best is None or score < best[0]:
            best = (score, lat, glx, unk, swap)
    _, lat, glx, unk, swap = best
    if swap:
        notes.append("colours matched black-to-white")
    if stage1 or lat:
        w = dict(stage1)
        w.update(lat)
        first = next(iter(w))
        return ComparisonVerdict(LATTICE_DISTINGUISHED, first, w, notes)
    if glx:
        return ComparisonVerdict(LINKING_FORM_DISTINGUISHED, next(iter(glx)), glx, notes)
    if b1.errors or b2.errors:
        return ComparisonVerdict(UNKNOWN, "", {}, notes + unk + [f"errors: {k}" for k in {**b1.errors, **b2.errors}])
    # an inconclusive search distinguishes nothing; say so and keep the verdict
    return ComparisonVerdict(LATTICE_EQUIVALENT, "", {}, notes + [f"{u} (not certified)" for u in unk])


# ---------------------------------------------------------------------------
# persistence


class BundleStore:
    """One JSON file per diagram, named by content digest."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, b: InvariantBundle) -> Path:
        return self.root / f"{b.digest}.json"

    def save(self, b: InvariantBundle) -> Path:
        path = self.path_for(b)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(b.to_json())
        os.replace(tmp, path)
        return path

    def load_all(self) -> list:
        out = []
        for p in sorted(self.root.glob("*.json")):
            data = json.loads(p.read_text(encoding="utf-8"))
            if "schema_version" in data and "lattices" in data:
                out.append(InvariantBundle.from_dict(data))
        return out


def find_counterexamples(bundles) -> list:
    """Pairs that agree on every lattice invariant but differ in the linking form."""
    bundles = sorted(bundles, key=lambda b: (b.crossing_number or 0, b.id))
    out = []
    for i in range(len(bundles)):
        for j in range(i + 1, len(bundles)):
            v = compare_bundles(bundles[i], bundles[j], diagram_stage=False)
            if v.level == LINKING_FORM_DISTINGUISHED:
                out.append((bundles[i].id, bundles[j].id, v))
    return out


# ---------------------------------------------------------------------------
# batch


DIAGRAM_SUFFIXES = (".txt", ".pd", ".json")


def catalog_files(path) -> list:
    p = Path(path)
    if p.is_file():
        return [p]
    return sorted(f for f in p.iterdir() if f.suffix in DIAGRAM_SUFFIXES and f.is_file())


def _compute_one(path: str):
    try:
        d = load_diagram(path)
        b = invariant_bundle(d)
    except Exception as exc:
        return path, None, f"{type(exc).__name__}: {exc}"
    if "colouring" in b.errors:
        # nothing but diagram statistics would survive; keep it out of the store
        return path, None, f"NotCheckerboardColourable: {b.errors['colouring']}"
    try:
        return path, b.to_dict(), None
    except Exception as exc:
        return path, None, f"{type(exc).__name__}: {exc}"


@dataclass
class RunReport:
    computed: list = field(default_factory=list)  # (file, digest)
    quarantined: list = field(default_factory=list)  # (file, error)

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION,
                "computed": [{"file": f, "digest": d} for f, d in self.computed],
                "quarantined": [{"file": f, "error": e} for f, e in self.quarantined]}


def batch_compute(catalog, output, jobs: int = 1) -> RunReport:
    files = [str(f) for f in catalog_files(catalog)]
    store = BundleStore(output)
    report = RunReport()
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_compute_one, files))
    else:
        results = [_compute_one(f) for f in files]
    for path, data, err in sorted(results, key=lambda r: r[0]):
        if err is not None:
            log.warning("quarantined %s: %s", path, err)
            report.quarantined.append((path, err))
            continue
        b = InvariantBundle.from_dict(data)
        store.save(b)
        report.computed.append((path, b.digest))
    return report
