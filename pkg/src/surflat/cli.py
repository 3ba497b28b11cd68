"""Command line front end. Exit codes: 0 ok, 1 usage, 2 bad input, 3 consistency failure."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import cutflow, dinv, glform, intlat, pipeline, poly
from .diagram import DiagramError, TangleSpec, load_diagram, mutate
from .embgraph import tait_graphs

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


class ConsistencyFailure(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(obj):
    print(json.dumps(obj, indent=1, sort_keys=True, default=str))


def _dump_graphs(d, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    black, white = tait_graphs(d)
    stem = d.name or "diagram"
    for tag, g in (("black", black), ("white", white)):
        (out / f"{stem}.{tag}.graph").write_text(g.to_text(), encoding="utf-8")


def cmd_compute(args):
    d = load_diagram(args.file)
    b = pipeline.invariant_bundle(d)
    if args.dump_graphs:
        _dump_graphs(d, args.dump_graphs)
    if args.store:
        pipeline.BundleStore(args.store).save(b)
    _emit(b.to_dict())


def cmd_batch(args):
    rep = pipeline.batch_compute(args.dir, args.output, jobs=args.jobs)
    _emit(rep.to_dict())


def cmd_compare(args):
    b1 = pipeline.invariant_bundle(load_diagram(args.file1))
    b2 = pipeline.invariant_bundle(load_diagram(args.file2))
    v = pipeline.compare_bundles(b1, b2)
    _emit({"schema_version": pipeline.SCHEMA_VERSION, "first": b1.id, "second": b2.id, **v.to_dict()})


def cmd_hunt(args):
    p = Path(args.dir)
    if any(f.suffix == ".json" and "lattices" in f.read_text(encoding="utf-8")[:4000] for f in p.glob("*.json")):
        bundles = pipeline.BundleStore(p).load_all()
    else:
        bundles = [pipeline.invariant_bundle(load_diagram(f)) for f in pipeline.catalog_files(p)]
    pairs = pipeline.find_counterexamples(bundles)
    _emit({"schema_version": pipeline.SCHEMA_VERSION,
           "pairs": [{"first": a, "second": b, **v.to_dict()} for a, b, v in pairs]})


def cmd_verify(args):
    d = load_diagram(args.file)
    reports = cutflow.verify_duality(d)
    chrom = dinv_chromatic(d)
    ok = all(r.ok and not r.failure for r in reports) and chrom["ok"]
    _emit({"schema_version": pipeline.SCHEMA_VERSION, "duality": [r.to_dict() for r in reports],
           "chromatic": chrom, "ok": ok})
    if not ok:
        raise ConsistencyFailure("verification failed")


def dinv_chromatic(d) -> dict:
    from .dinv import chromatic_duality_check

    return chromatic_duality_check(d)


def cmd_mutate(args):
    d = load_diagram(args.file)
    spec = TangleSpec.parse(args.tangle)
    out = mutate(d, spec)
    text = out.to_text()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_lattices(args):
    d = load_diagram(args.file)
    c = d.checkerboard_colour()
    black, white = tait_graphs(d, c)
    out = {"schema_version": pipeline.SCHEMA_VERSION, "genus": d.genus}
    for tag, g in (("b", black), ("w", white)):
        out[f"flow-{tag}"] = cutflow.flow_lattice(g).gram
        out[f"cut-{tag}"] = cutflow.cut_lattice(g).gram
        out[f"flow0-{tag}"] = cutflow.restricted_flow_lattice(g).gram
        out[f"iota-{tag}"] = [list(r) for r in cutflow.inclusion_map(g).matrix]
    out["duality"] = [r.to_dict() for r in cutflow.verify_duality(d)]
    if args.dump_graphs:
        _dump_graphs(d, args.dump_graphs)
    _emit(out)


def _lattice_by_name(d, name):
    kind, colour = name.split("-")
    c = d.checkerboard_colour()
    g = tait_graphs(d, c)[0 if colour == "b" else 1]
    fn = {"flow": cutflow.flow_lattice, "cut": cutflow.cut_lattice, "flow0": cutflow.restricted_flow_lattice}[kind]
    return fn(g)


def cmd_dinv(args):
    d = load_diagram(args.file)
    L = _lattice_by_name(d, args.lattice)
    D = dinv.d_invariant(L.lattice)
    if args.table:
        sys.stdout.write(D.table())
    else:
        _emit({"schema_version": pipeline.SCHEMA_VERSION, "lattice": args.lattice, **D.to_dict()})


def cmd_invariants(args):
    d = load_diagram(args.file)
    c = d.checkerboard_colour()
    colours = ("b", "w") if args.colour == "both" else (args.colour,)
    data = {col: glform.mock_seifert(d, c, col) for col in colours}
    if args.table:
        for col, gl in data.items():
            print(f"colour {col}: det {gl.determinant}  signature {gl.signature}  "
                  f"alexander {poly.to_str(gl.alexander)}")
    else:
        _emit({"schema_version": pipeline.SCHEMA_VERSION, **{col: gl.to_dict() for col, gl in data.items()}})


def _read_matrix(text):
    if Path(text).exists():
        text = Path(text).read_text(encoding="utf-8")
    M = json.loads(text)
    return [[int(x) for x in row] for row in M]


def cmd_lat(args):
    M = _read_matrix(args.matrix)
    op = args.op
    if op == "det":
        res = {"det": intlat.det(M)}
    elif op == "snf":
        U, S, V = intlat.smith_normal_form(M)
        res = {"U": U, "S": S, "V": V}
    elif op == "hnf":
        res = {"H": intlat.hermite_normal_form(M)}
    elif op == "signature":
        res = {"inertia": list(intlat.signature(M))}
    elif op == "discriminant":
        res = {"factors": list(intlat.discriminant_group(M).factors)}
    elif op == "kernel":
        res = {"kernel": intlat.integer_kernel(M)}
    elif op == "dinv":
        D = dinv.d_invariant_direct(M)
        res = D.to_dict()
    elif op == "alexander":
        res = {"raw": list(glform.alexander_raw(M)), "canonical": list(glform.mock_alexander(M)),
               "pretty": poly.to_str(glform.mock_alexander(M))}
    elif op in ("congruent", "isometric"):
        if not args.other:
            raise SystemExit(EXIT_USAGE)
        N = _read_matrix(args.other)
        v = intlat.pd_isometric(M, N) if op == "isometric" else intlat.unimodular_congruent(M, N)
        res = {"status": v.status, "witness": v.witness, "reason": v.reason}
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(EXIT_USAGE)
    _emit({"schema_version": pipeline.SCHEMA_VERSION, "op": op, **res})


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="surflat", description="Lattice and linking-form invariants of link diagrams on surfaces.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("compute", help="full invariant bundle of one diagram")
    s.add_argument("file")
    s.add_argument("--store", help="also save the bundle into this store directory")
    s.add_argument("--dump-graphs", metavar="DIR", help="write both Tait graphs as edge lists")
    s.set_defaults(fn=cmd_compute)

    s = sub.add_parser("batch", help="compute bundles for every diagram in a directory")
    s.add_argument("dir")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("-j", "--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_batch)

    s = sub.add_parser("compare", help="staged comparison of two diagrams")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(fn=cmd_compare)

    s = sub.add_parser("hunt", help="report lattice-equivalent pairs with different linking forms")
    s.add_argument("dir", help="bundle store or directory of diagrams")
    s.set_defaults(fn=cmd_hunt)

    s = sub.add_parser("verify", help="duality and chromatic consistency checks")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("mutate", help="apply a disc mutation")
    s.add_argument("file")
    s.add_argument("--tangle", required=True,
                   help="crossings=ID,ID,.. boundary=aN,aN,aN,aN involution=h|v|pi")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_mutate)

    s = sub.add_parser("lattices", help="Gram matrices of flow, cut and restricted flow lattices")
    s.add_argument("file")
    s.add_argument("--dump-graphs", metavar="DIR")
    s.set_defaults(fn=cmd_lattices)

    s = sub.add_parser("dinv", help="d-invariant of one lattice")
    s.add_argument("file")
    s.add_argument("--lattice", required=True, choices=pipeline.LATTICE_NAMES)
    s.add_argument("--table", action="store_true")
    s.set_defaults(fn=cmd_dinv)

    s = sub.add_parser("invariants", help="mock Seifert matrices and derived invariants")
    s.add_argument("file")
    s.add_argument("--colour", choices=("b", "w", "both"), default="both")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", default=True)
    g.add_argument("--table", action="store_true")
    s.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("lat", help="matrix utilities on JSON integer matrices")
    s.add_argument("op", choices=("det", "snf", "hnf", "signature", "discriminant", "kernel", "dinv",
                                  "alexander", "congruent", "isometric"))
    s.add_argument("matrix", help="JSON array of arrays, or a file containing one")
    s.add_argument("other", nargs="?")
    s.set_defaults(fn=cmd_lat)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.fn(args)
    except (DiagramError, json.JSONDecodeError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConsistencyFailure, dinv.CosetCountMismatch, AssertionError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
