"""Command-line interface.

    nilstrom reproduce [--mode exact|approx] [--scenario NAME ...] [--json PATH] [--timing]
    nilstrom point --family F [--s S] [--t T] [--abs-t A] [--r R] [--instanton flat|ccdlmz] [--json PATH]
    nilstrom scan --family h5|h4 [--s S] [--n N] [--radii LIST] [--csv PATH] [--json PATH] [--jobs J]

Scalars are written as ``"a/b+c/d i"``.  JSON goes to ``PATH`` (``-`` for
stdout); numbers are strings tagged with the mode that produced them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import NilstromError
from .report import (
    SCAN_COLUMNS,
    SCENARIOS,
    SCHEMA_VERSION,
    complex_literal,
    format_row,
    h4_grid,
    h5_grid,
    point_report,
    run_scenario,
    scan_row,
    scan_row_json,
)
from .scalar import Mode


def _write_json(payload, path: str | None):
    if path is None:
        return
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_reproduce(args) -> int:
    if args.list:
        for name in SCENARIOS:
            print(name)
        return 0
    names = args.scenario or list(SCENARIOS)
    unknown = [n for n in names if n not in SCENARIOS]
    if unknown:
        print(f"unknown scenario(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    reports = []
    for name in names:
        rep = run_scenario(name, args.mode, timing=args.timing)
        reports.append(rep)
        if args.json != "-":
            print(rep.summary())
    failed = [r.scenario for r in reports if not r.match]
    bundle = {
        "schema_version": SCHEMA_VERSION,
        "mode": Mode(args.mode).value,
        "all_pass": not failed,
        "first_failure": failed[0] if failed else None,
        "reports": [r.to_json() for r in reports],
    }
    _write_json(bundle, args.json)
    if failed:
        print(f"first failing scenario: {failed[0]} ({len(failed)}/{len(reports)} failed)", file=sys.stderr)
        return 1
    if args.json != "-":
        print(f"all {len(reports)} scenarios passed")
    return 0


def cmd_point(args) -> int:
    try:
        rep = point_report(args.family, args.mode, s=args.s, t=args.t, abs_t=args.abs_t, r=args.r,
                           instanton=args.instanton, timing=args.timing)
    except (NilstromError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    payload = rep.to_json()
    if args.json != "-":
        for key, val in payload["outputs"].items():
            if isinstance(val, dict):
                val = val["value"]
            print(f"{key:>20}: {val}")
        for key in ("alpha_verdict", "feasibility"):
            if key in payload["details"]:
                print(f"{key:>20}: {payload['details'][key]}")
    _write_json(payload, args.json)
    return 0


def _parse_radii(text: str) -> list:
    return [Fraction(x) for x in text.split(",") if x.strip()]


def _scan_jobs(args) -> list:
    if args.family in ("h5", "h5disk"):
        pts = h5_grid(args.s, args.n)
        return [("H5Disk", args.s, complex_literal(a, b), args.r) for a, b in pts]
    pts = h4_grid(_parse_radii(args.radii))
    return [("H4Disk", None, complex_literal(a, b), args.r) for a, b in pts]


def _row_job(job):
    fam, s, t, r, mode = job
    return scan_row(fam, s, t, r, mode)


def cmd_scan(args) -> int:
    jobs = [(*j, args.mode) for j in _scan_jobs(args)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            raw = list(pool.map(_row_job, jobs))
    else:
        raw = [_row_job(j) for j in jobs]
    rows = [format_row(r) for r in raw]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.csv:
        if args.csv == "-":
            sys.stdout.write(buf.getvalue())
        else:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
    payload = {"schema_version": SCHEMA_VERSION, "mode": Mode(args.mode).value, "columns": list(SCAN_COLUMNS),
               "rows": [scan_row_json(row, args.mode) for row in raw]}
    _write_json(payload, args.json)
    if not args.csv and not args.json:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilstrom", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXACT.value)
        p.add_argument("--json", metavar="PATH", help="write JSON here ('-' for stdout)")
        p.add_argument("--timing", action="store_true", help="record runtime_ms (null otherwise)")

    rp = sub.add_parser("reproduce", help="run the scenario catalogue and compare with oracles")
    common(rp)
    rp.add_argument("--scenario", action="append", metavar="NAME", help="run only NAME (repeatable)")
    rp.add_argument("--list", action="store_true", help="list scenario names")
    rp.set_defaults(func=cmd_reproduce)

    pp = sub.add_parser("point", help="evaluate one family point")
    common(pp)
    pp.add_argument("--family", required=True, help="xs, h5disk, h4disk, torus or iwasawa")
    pp.add_argument("--s")
    pp.add_argument("--t", help='complex parameter, e.g. "3/10+2/5 i"')
    pp.add_argument("--abs-t", dest="abs_t", help="exact |t| when it cannot be derived")
    pp.add_argument("--r")
    pp.add_argument("--instanton", choices=["flat", "ccdlmz"], default="flat")
    pp.set_defaults(func=cmd_point)

    sp = sub.add_parser("scan", help="evaluate a rational parameter grid")
    sp.add_argument("--family", required=True, choices=["h5", "h5disk", "h4", "h4disk"])
    sp.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXACT.value)
    sp.add_argument("--s", default="1/4", help="h5 base parameter")
    sp.add_argument("--n", type=int, default=11, help="h5 grid points per axis (0 gives an empty grid)")
    sp.add_argument("--radii", default="1/4,1/2,3/4", help="comma-separated h4 radii (empty gives an empty grid)")
    sp.add_argument("--r", default=None, help="fibre scale of the reference metric")
    sp.add_argument("--csv", metavar="PATH", help="write CSV here ('-' for stdout)")
    sp.add_argument("--json", metavar="PATH", help="write JSON here ('-' for stdout)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
