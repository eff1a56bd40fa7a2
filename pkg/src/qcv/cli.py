"""Command-line front end: ``qcv <verb> ...``."""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import asdict
from typing import Sequence, TextIO

from . import conic_bundle as cb
from . import dpf, enumeration, registry
from .invariants import dump_known_pairs, known_pairs
from .rational import render
from .report import emit_report, to_jsonable


def _write_json(doc, path: str, stdout: TextIO) -> None:
    text = json.dumps(to_jsonable(doc), indent=2, sort_keys=True) + "\n"
    if path == "-":
        stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_verify(args, out: TextIO) -> int:
    ids = args.ids or ["all"]
    try:
        reports = registry.verify(ids, jobs=args.jobs)
    except registry.UnknownCaseId as exc:
        print(f"unknown case id: {exc.args[0]}", file=sys.stderr)
        print("known ids: " + ", ".join(registry.cases()), file=sys.stderr)
        return 2
    if args.json:
        buf = io.StringIO()
        emit_report(reports, "json", buf)
        if args.json == "-":
            out.write(buf.getvalue())
        else:
            with open(args.json, "w") as fh:
                fh.write(buf.getvalue())
    if args.json != "-":
        emit_report(reports, "text", out)
    failed = any(r.verdict == "fail" for r in reports)
    if args.strict:
        failed = failed or any(r.verdict == "discrepancy" for r in reports)
    return 1 if failed else 0


def _cmd_list(args, out: TextIO) -> int:
    for cid, c in registry.cases().items():
        out.write(f"{cid}: {c.claim}\n")
    return 0


def _cmd_solve_dpf(args, out: TextIO) -> int:
    if args.list or not args.preset:
        for p in dpf.preset_catalog():
            out.write(f"{p.name}: {p.citation}\n")
        return 0
    try:
        p = dpf.preset(args.preset)
    except KeyError:
        print(f"unknown preset {args.preset!r}", file=sys.stderr)
        return 2
    sol = p.solve()
    doc = {
        "preset": dpf.preset_fixture(p),
        "solutions": [list(s) for s in sol.solutions],
        "degree_cap": sol.degree_cap,
        "param_window": list(sol.param_window) if sol.param_window else None,
        "trail": list(sol.trail),
        "matches_expected": p.matches(),
    }
    if args.json:
        _write_json(doc, args.json, out)
        if args.json == "-":
            return 0
    for line in p.derivation:
        out.write(f"  {line}\n")
    for line in sol.trail:
        out.write(f"{line}\n")
    out.write(f"expected {list(p.expected_degrees)}: {'match' if p.matches() else 'MISMATCH'}\n")
    return 0


def _cmd_cb_solve(args, out: TextIO) -> int:
    v = cb.solve_point(cb.ConicBundlePoint(args.d, args.x, args.y))
    doc = {
        "d": args.d, "x": args.x, "y": args.y,
        "v": dict(zip(cb.UNKNOWNS, v.as_tuple())),
        "e2": v.e2(args.d, args.y), "e1D": v.e1D(args.y), "g": v.g1(args.d, args.y) + 1,
        "residual": cb.residual(args.d, args.x, args.y, v),
    }
    if args.json:
        _write_json(doc, args.json, out)
        if args.json == "-":
            return 0
    for k, val in doc["v"].items():
        out.write(f"{k} = {render(val)}\n")
    out.write(f"e2 = {render(doc['e2'])}\ne1.D = {render(doc['e1D'])}\ng = {render(doc['g'])}\n")
    return 0


def _cmd_cb_triangle(args, out: TextIO) -> int:
    t = cb.triangle(args.d)
    lo, hi = cb.superbound(args.d, strict=False)
    discrepancies = []
    try:
        cb.superbound(args.d, strict=True)
    except cb.PrintedFormulaDiscrepancy as exc:
        discrepancies = exc.discrepancies
    doc = {
        "d": args.d,
        "vertices": [list(t.v1), list(t.v2), list(t.v3)],
        "endpoints": [lo, hi],
        "lattice_points": t.lattice_count(),
        "discrepancies": discrepancies,
    }
    if args.json:
        _write_json(doc, args.json, out)
        if args.json == "-":
            return 0
    for name, v in zip(("v1", "v2", "v3"), (t.v1, t.v2, t.v3)):
        out.write(f"{name} = ({render(v[0])}, {render(v[1])})\n")
    out.write(f"{render(lo)} <= g-1 <= {render(hi)}\n")
    return 0


def _cmd_cb_bounds(args, out: TextIO) -> int:
    c = cb.degree_bound_cascade()
    doc = {"rows": [{"case": r.case, "k": r.k, "max_d": r.max_d, "printed": r.printed, "trail": r.trail} for r in c.rows]}
    if args.json:
        _write_json(doc, args.json, out)
        if args.json == "-":
            return 0
    for r in c.rows:
        shown = r.max_d if r.max_d is not None else "none"
        out.write(f"{r.case:14} k={r.k}: d <= {shown}  (printed {r.printed})\n")
    return 0


def _cmd_enumerate(args, out: TextIO) -> int:
    config = enumeration.FilterConfig(
        d_min=args.d_min, d_max=args.d_max,
        filters=frozenset(enumeration.FILTERS) - set(args.disable_filter or ()),
        gross_bound=args.gross_bound, budget=args.budget,
    )
    try:
        report = enumeration.run(config, jobs=args.jobs)
    except enumeration.RegionOverflow as exc:
        print(str(exc), file=sys.stderr)
        return 3
    if args.json:
        text = report.dumps()
        if args.json == "-":
            out.write(text)
            return 0
        with open(args.json, "w") as fh:
            fh.write(text)
    out.write(f"survivors: {report.survivors}\n")
    for d in report.survivors:
        for w in report.witnesses(d):
            out.write(f"  d={d} x={w['x']} y={w['y']} g={w['g']} chiY={w['chiY']} chiS={w['chiS']}\n")
    if not config.gross_bound:
        out.write("external genus bound not supplied (--gross-bound); survivors may include extra degrees\n")
    return 0


def _cmd_table(args, out: TextIO) -> int:
    if args.json:
        rows = [asdict(r) | {"chi_OS": r.chi_OS} for r in known_pairs()]
        _write_json(rows, args.json, out)
        if args.json == "-":
            return 0
    if args.jsonl:
        dump_known_pairs(out)
        return 0
    for r in known_pairs():
        n = "any" if r.n is None else r.n
        out.write(f"{r.type_label}  n={n}  d={r.d}  g={r.g}  q={r.q}  p_g={r.p_g}  {r.description}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcv", description="exact checks for codimension-two subvarieties of quadrics")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_json(p):
        p.add_argument("--json", metavar="PATH", help="write a JSON report to PATH ('-' for stdout)")

    p = sub.add_parser("verify", help="run registered verification cases")
    p.add_argument("ids", nargs="*", help="case ids, or 'all' (default)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="treat printed-formula discrepancies as failures")
    add_json(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("list", help="list verification cases")
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("solve", help="solve a restricted double point relation")
    ssub = p.add_subparsers(dest="what", required=True)
    q = ssub.add_parser("dpf")
    q.add_argument("--preset")
    q.add_argument("--list", action="store_true")
    add_json(q)
    q.set_defaults(func=_cmd_solve_dpf)

    p = sub.add_parser("conic-bundle", help="conic bundle system tools")
    csub = p.add_subparsers(dest="what", required=True)
    q = csub.add_parser("solve")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--y", type=int, required=True)
    add_json(q)
    q.set_defaults(func=_cmd_cb_solve)
    q = csub.add_parser("triangle")
    q.add_argument("--d", type=int, required=True)
    add_json(q)
    q.set_defaults(func=_cmd_cb_triangle)
    q = csub.add_parser("bounds")
    add_json(q)
    q.set_defaults(func=_cmd_cb_bounds)

    p = sub.add_parser("enumerate", help="lattice sweeps")
    esub = p.add_subparsers(dest="what", required=True)
    q = esub.add_parser("conic-bundle")
    q.add_argument("--d-min", type=int, default=20)
    q.add_argument("--d-max", type=int, default=276)
    q.add_argument("--disable-filter", action="append", choices=enumeration.FILTERS)
    q.add_argument("--gross-bound", metavar="SPEC", help="plugin 'file.py:func' or 'module:func' returning True when g is allowed")
    q.add_argument("--budget", type=int, help="lattice points per degree (default QCV_BUDGET or 10^9)")
    q.add_argument("--jobs", type=int, default=1)
    add_json(q)
    q.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("table", help="reference tables")
    tsub = p.add_subparsers(dest="what", required=True)
    q = tsub.add_parser("known-pairs")
    q.add_argument("--jsonl", action="store_true", help="one record per line, fixed field order")
    add_json(q)
    q.set_defaults(func=_cmd_table)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
