"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (or a scan touched a search
cap), 2 usage error, 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from pathlib import Path

from .contrib import table1, table1_csv
from .errors import ABCError
from .oracle import oracle_minimal
from .search import ExtremalRecord, SearchCaps, minimal_tree, scan, shape_pattern
from .shapes import PARAMETER_NAMES
from .tree_core import abc_index, build_extremal_tree, format_tree, parse_tree, shape_header
from .verify import REPORTS

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = (pad + dumps(v, indent, _level + 1) for v in obj)
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(str(obj))


def record_json(rec: ExtremalRecord) -> dict:
    out = {
        "t": rec.t,
        "abc": rec.abc,
        "family": rec.shape.family.value,
        "parameters": rec.shape.parameters(),
        "order": rec.order,
        "unique": rec.unique,
        "cap_touched": rec.cap_touched,
    }
    if not rec.unique:
        out["all_shapes"] = [{"family": s.family.value, "parameters": s.parameters()}
                             for s in rec.shapes]
    return out


def _caps(args) -> SearchCaps:
    return SearchCaps(kcap=args.kcap, dcap=args.dcap)


def cmd_abc(args) -> int:
    tree = parse_tree(Path(args.file).read_text(encoding="utf-8"))
    print(format(abc_index(tree), ".17g"))
    return EXIT_OK


def cmd_search(args) -> int:
    print(dumps(record_json(minimal_tree(args.t, _caps(args)))))
    return EXIT_OK


def cmd_scan(args) -> int:
    result = scan(args.t1, args.t2, _caps(args), workers=args.threads)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "abc", "family", *PARAMETER_NAMES, "order", "unique"])
    for rec in result.records:
        params = rec.shape.parameters()
        writer.writerow([rec.t, format(rec.abc, ".17g"), rec.shape.family.value,
                         *(params[n] for n in PARAMETER_NAMES), rec.order,
                         str(rec.unique).lower()])
    if args.csv:
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    by_t = {r.t: r for r in result.records}
    for t in result.change_points:
        before, after = (shape_pattern(by_t[x].shape) for x in (t - 1, t))
        print(f"change at t={t}: {before[0]} {list(before[1])} -> "
              f"{after[0]} {list(after[1])}", file=sys.stderr)
    print(f"{len(result.change_points)} change points", file=sys.stderr)
    if result.cap_touched:
        touched = [r.t for r in result.records if r.cap_touched]
        print(f"warning: winners touch a search cap at t={touched}; rerun with larger caps",
              file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_oracle(args) -> int:
    res = oracle_minimal(args.t, max_internal=args.max_internal,
                         keep_trees=bool(args.emit_trees), workers=args.threads)
    print(dumps({
        "t": res.t,
        "trees_considered": res.trees_considered,
        "min_abc": res.min_abc,
        "minimizers": [code.decode("ascii") for code in res.minimizers],
    }))
    if args.emit_trees:
        out = Path(args.emit_trees)
        out.mkdir(parents=True, exist_ok=True)
        for i, tree in enumerate(res.trees):
            header = [f"t={res.t} abc={res.min_abc:.17g}", f"code={res.minimizers[i].decode()}"]
            (out / f"minimizer_{i}.txt").write_text(format_tree(tree, header), encoding="utf-8")
    return EXIT_OK


def cmd_table1(args) -> int:
    if args.csv:
        Path(args.csv).write_text(table1_csv(), encoding="utf-8")
        return EXIT_OK
    print(f"{'k':>3}  {'c(k,120)':>12}  {'diff':>12}  {'c(k,inf)':>12}  {'diff':>12}")
    for row in table1():
        print(f"{row.k:>3}  {row.at_120.c:12.8f}  {row.at_120.diff:12.8f}  "
              f"{row.at_inf.c:12.8f}  {row.at_inf.diff:12.8f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.name == "all":
        reports = [fn() for fn in REPORTS.values()]
    elif args.name in REPORTS:
        reports = [REPORTS[args.name]()]
    else:
        print(f"unknown check {args.name!r}; choose from all, {', '.join(REPORTS)}",
              file=sys.stderr)
        return EXIT_USAGE
    payload = [dataclasses.asdict(r) for r in reports]
    print(dumps(payload if args.name == "all" else payload[0]))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_tree_build(args) -> int:
    rec = minimal_tree(args.t)
    text = format_tree(build_extremal_tree(rec.shape),
                       [f"t={rec.t} abc={rec.abc:.17g} order={rec.order}",
                        *shape_header(rec.shape)])
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abctrees", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for scan and oracle")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("abc", help="ABC index of an edge-list file")
    p.add_argument("file")
    p.set_defaults(func=cmd_abc)

    def add_caps(p):
        p.add_argument("--kcap", type=int, default=SearchCaps.kcap)
        p.add_argument("--dcap", type=int, default=None)

    p = sub.add_parser("search", help="minimal tree with T leaves as JSON")
    p.add_argument("t", type=int)
    add_caps(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scan", help="minimal trees for T1..T2 as CSV")
    p.add_argument("t1", type=int)
    p.add_argument("t2", type=int)
    p.add_argument("--csv")
    add_caps(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="exhaustive minimum for small T")
    p.add_argument("t", type=int)
    p.add_argument("--max-internal", type=int, default=None)
    p.add_argument("--emit-trees")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table1", help="leaf contributions for k = 5..16")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="run a named inequality check, or all")
    p.add_argument("name")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tree", help="tree utilities")
    tree_sub = p.add_subparsers(dest="tree_command", required=True)
    b = tree_sub.add_parser("build", help="edge list of the minimal tree with T leaves")
    b.add_argument("t", type=int)
    b.add_argument("--out")
    b.set_defaults(func=cmd_tree_build)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.threads < 1:
        print("--threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ABCError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
