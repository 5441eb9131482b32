"""Command line entry point.

    cmnewton run FILE [--json | --csv] [--svg PATH]
    cmnewton scan FILE --bound B [--json | --csv] [--jobs N]
    cmnewton census FILE [--json | --csv]
    cmnewton oracle --curve {i,zeta3} --bound B [--json | --csv]

Exit status: 0 on success, 1 for invalid input, 2 if an internal invariant
check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .errors import InvariantViolation, SpecError, ValidationError
from .instance import (
    CENSUS_HEADER,
    SCAN_HEADER,
    census,
    dump_report,
    read_spec,
    run_instance,
    scan_doc,
    scan_primes,
)
from .oracle import CURVES, deuring_agreement


def _table(header, rows) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for k, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(header, rows, footer=()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    for line in footer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


# -- run -------------------------------------------------------------------------

RUN_HEADER = ("type", "classification", "slope", "multiplicity", "coset")


def _run_rows(doc):
    for k, res in enumerate(doc["results"]):
        for blk in res["slopes"]:
            yield (k, res["classification"], blk["slope"], blk["multiplicity"], " ".join(blk["coset"]))


def format_run(doc: dict) -> str:
    f = doc["field"]
    out = []
    head = f"field: {f['kind']}"
    if "conductor" in f:
        head += f" n={f['conductor']}"
    out.append(f"{head}  |G|={f['group_order']}  g={f['g']}  c={f['conjugation']}")
    out.append(f"  H  = {{{', '.join(f['H'])}}}")
    out.append(f"  H+ = {{{', '.join(f['H_plus'])}}}")
    pr = doc["prime"]
    p = f"p={pr['p']}  " if "p" in pr else ""
    out.append(f"prime: {p}D={{{', '.join(pr['D'])}}}  I={{{', '.join(pr['I'])}}}")
    for k, res in enumerate(doc["results"]):
        out.append("")
        prim = "primitive" if res["primitive"] else "imprimitive"
        out.append(f"[{k}] CM type {{{', '.join(res['cm_type'])}}} ({prim})")
        out.append(f"    classification: {res['classification']}")
        out.append(f"    slopes: {res['slope_summary']}")
        rows = [(b["slope"], b["multiplicity"], "{" + ", ".join(b["coset"]) + "}") for b in res["slopes"]]
        out.append(_indent(_table(("slope", "mult", "double coset DgH"), rows)))
        verts = " -> ".join(f"({x}, {Fraction(y)})" for x, y in res["vertices"])
        out.append(f"    vertices: {verts}")
        out.append("    primes of F+ above p:")
        for v in res["splitting"]["places"]:
            ws = "; ".join(f"w e={w['e']} f={w['f']} slope={w['slope']}" for w in v["above"])
            out.append(f"      v e={v['e']} f={v['f']} {v['behavior']}: {ws}")
        out.append("    criteria:")
        for name, r in res["criteria"].items():
            state = "ok" if r["satisfied"] else "VIOLATED"
            hyp = "applies" if r["hypothesis"] else "vacuous"
            out.append(f"      {name}: {state} ({hyp})")
    return "\n".join(out) + "\n"


def _indent(text, pad="    "):
    return "\n".join(pad + line for line in text.rstrip("\n").split("\n"))


def cmd_run(args) -> str:
    doc, evaluations = run_instance(read_spec(args.file))
    if args.svg:
        from .plotting import render_newton_polygons
        render_newton_polygons([ev.polygon for _, ev in evaluations], args.svg,
                               labels=[f"type {k}" for k in range(len(evaluations))])
    if args.json:
        return dump_report(doc)
    if args.csv:
        return _csv(RUN_HEADER, list(_run_rows(doc)))
    return format_run(doc)


def cmd_scan(args) -> str:
    res = scan_primes(read_spec(args.file), args.bound, jobs=args.jobs)
    if args.json:
        return dump_report(scan_doc(res))
    counts, dens = res.counts(), res.densities()
    footer = [f"{k}={counts[k]}/{len(res.rows)} ({dens[k]:.4f})" for k in counts]
    if args.csv:
        return _csv(SCAN_HEADER, res.rows, footer)
    return _table(SCAN_HEADER, res.rows) + "".join(line + "\n" for line in footer)


def cmd_census(args) -> str:
    rows = census(read_spec(args.file))
    if args.json:
        return dump_report({"columns": list(CENSUS_HEADER), "rows": [list(r) for r in rows]})
    if args.csv:
        return _csv(CENSUS_HEADER, rows)
    return _table(CENSUS_HEADER, rows)


ORACLE_HEADER = ("p", "a_p", "observed", "predicted", "agree")


def cmd_oracle(args) -> str:
    rep = deuring_agreement(CURVES[args.curve], args.bound)
    rows = [(p, a, o, q, o == q) for p, a, o, q in rep.rows]
    counts = rep.counts()
    footer = [f"curve: {rep.curve.name}", f"mismatches={len(rep.mismatches)}"] + \
        [f"{k}={v}" for k, v in counts.items()]
    if args.json:
        return json.dumps({"curve": rep.curve.name, "bound": rep.bound,
                           "columns": list(ORACLE_HEADER), "rows": [list(r) for r in rows],
                           "mismatches": len(rep.mismatches), "counts": counts}, indent=2) + "\n"
    if args.csv:
        return _csv(ORACLE_HEADER, rows, footer)
    return _table(ORACLE_HEADER, rows) + "".join(line + "\n" for line in footer)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    group.add_argument("--csv", action="store_true", help="CSV on stdout")

    parser = argparse.ArgumentParser(prog="cmnewton",
                                     description="Newton polygons of reductions of CM abelian varieties")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[fmt], help="evaluate one instance")
    p.add_argument("file")
    p.add_argument("--svg", metavar="PATH", help="also draw the Newton polygon(s) to PATH")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("scan", parents=[fmt], help="classify every prime up to a bound")
    p.add_argument("file")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("census", parents=[fmt], help="all CM types x cyclic decomposition groups")
    p.add_argument("file")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("oracle", parents=[fmt], help="compare point counts with the prediction (g = 1)")
    p.add_argument("--curve", choices=sorted(CURVES), required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
