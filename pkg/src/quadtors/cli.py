"""Command-line entry point: quadtors <subcommand> [flags]."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import errors
from .qfield import QuadraticField, field_from_discriminant, make_field

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 2, 64
JOBS_ENV = "QUADTORS_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _int(text: str) -> int:
    """Integers, also written as 1e10 or 10^10."""
    t = text.strip().replace("_", "")
    try:
        if "^" in t:
            base, exp = t.split("^")
            return int(base) ** int(exp)
        if "e" in t.lower():
            mant, exp = t.lower().split("e")
            if "." not in mant:
                return int(mant) * 10 ** int(exp)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _pool(text: str) -> list[int]:
    parts = [x for x in text.replace(" ", "").split(",") if x]
    return [_int(x) for x in parts]


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quadtors", description="p-adic torsion invariants of real quadratic fields")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, field=True, jobs=False, fmt=True):
        if field:
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--m", type=_int, help="squarefree m > 1")
            g.add_argument("--D", type=_int, help="fundamental discriminant")
        sp.add_argument("--p", type=_int, default=3, help="odd prime (default 3)")
        if jobs:
            sp.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or CPU count)")
        if fmt:
            sp.add_argument("--format", choices=("json", "csv"), default="json")
            sp.add_argument("--output", default=None, help="write to this file instead of stdout")

    sp = sub.add_parser("analyze", help="invariants of one field")
    common(sp)
    sp.add_argument("--nt", type=_int, default=9, help="p-adic precision t")
    sp.add_argument("--extended", action="store_true", help="also print eps, eta and the regulator order")

    sp = sub.add_parser("scan", help="scan fundamental discriminants")
    common(sp, field=False, jobs=True)
    sp.add_argument("--bd", type=_int, default=2)
    sp.add_argument("--BD", type=_int, required=True)
    sp.add_argument("--vh-min", type=_int, default=0)
    sp.add_argument("--zmax-exp", type=_int, default=0)
    sp.add_argument("--nt", type=_int, default=9)

    sp = sub.add_parser("rayclass", help="structure of the torsion group T")
    common(sp, fmt=False)
    sp.add_argument("--output", default=None)

    for name, helptext in (
        ("survey-orders", "class orders of primes over split l"),
        ("survey-ell-units", "delta of l-units for a class order r"),
    ):
        sp = sub.add_parser(name, help=helptext)
        common(sp, jobs=True)
        sp.add_argument("--n", type=_int, default=8, help="level: l = +-1 mod p^(n+1) (default 8)")
        sp.add_argument("--bl", type=_int, required=True, help="bound on l")
        if name == "survey-ell-units":
            sp.add_argument("--r", type=_int, default=1, help="class order stratum")

    sp = sub.add_parser("survey-relations", help="random products of pool primes")
    common(sp, jobs=True)
    sp.add_argument("--pool", type=_pool, required=True, help="comma separated primes")
    sp.add_argument("--trials", type=_int, default=1000)
    sp.add_argument("--seed", type=_int, required=True)

    sp = sub.add_parser("solve-norm", help="solutions of N(x) = N")
    common(sp, fmt=False)
    sp.add_argument("--N", type=_int, required=True)
    sp.add_argument("--primitive", action="store_true")
    sp.add_argument("--output", default=None)
    return ap


def _field(args) -> QuadraticField:
    return make_field(args.m) if args.m is not None else field_from_discriminant(args.D)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _cmd_analyze(args) -> None:
    from .invariants import CSV_COLUMNS, analyze

    rep = analyze(_field(args), args.p, args.nt)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerow(rep.csv_row())
        _emit(buf.getvalue(), args.output)
    else:
        _emit(rep.to_json(extended=args.extended) + "\n", args.output)


def _cmd_scan(args) -> None:
    from .invariants import CSV_COLUMNS, scan

    jobs = args.jobs or _default_jobs()
    reports = scan(args.bd, args.BD, args.p, args.vh_min, args.zmax_exp, args.nt, jobs=jobs)
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow(r.csv_row())
    else:
        for r in reports:
            buf.write(r.to_json() + "\n")
    _emit(buf.getvalue(), args.output)


def _cmd_rayclass(args) -> None:
    from .rayclass import torsion_structure

    ts = torsion_structure(_field(args), args.p)
    _emit(_dumps(ts.to_dict()) + "\n", args.output)


def _emit_histogram(args, hist, envelope: dict) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "count", "proportion", "expected"])
        for row in hist.rows():
            w.writerow([row["label"], row["count"], repr(row["proportion"]),
                        "" if row["expected"] is None else repr(row["expected"])])
        _emit(buf.getvalue(), args.output)
        meta = _dumps(envelope) + "\n"
        if args.output:
            with open(args.output + ".meta.json", "w", encoding="utf-8") as fh:
                fh.write(meta)
        else:
            sys.stderr.write(meta)
    else:
        _emit(_dumps({**envelope, "histogram": hist.to_dict()}) + "\n", args.output)


def _cmd_survey(args) -> None:
    from .stats import ScanSpec, ell_unit_delta_survey, order_survey, relation_survey, timed

    field = _field(args)
    jobs = args.jobs or _default_jobs()
    env = {"command": args.command, "m": field.m, "D": field.D, "p": args.p}
    if args.command == "survey-relations":
        (tally, hist), ms = timed(relation_survey, field, args.p, args.pool, args.trials, args.seed, jobs=jobs)
        env.update({"trials": args.trials, "seed": args.seed, "pool": args.pool, "rng": "PCG64"})
    else:
        spec = ScanSpec(args.p, args.n, args.bl)
        env.update({"n": args.n, "BL": args.bl})
        if args.command == "survey-orders":
            hist, ms = timed(order_survey, field, spec, jobs=jobs)
        else:
            hist, ms = timed(ell_unit_delta_survey, field, spec, args.r, jobs=jobs)
            env["r"] = args.r
    env["elapsed_ms"] = ms
    _emit_histogram(args, hist, env)


def _cmd_solve_norm(args) -> None:
    from .normsolver import norm_solutions

    field = _field(args)
    sols = norm_solutions(field, args.N, primitive_only=args.primitive)
    out = {
        "m": field.m, "D": field.D, "N": args.N, "primitive": args.primitive,
        "solutions": [x.format(field.m) for x in sols],
    }
    _emit(_dumps(out) + "\n", args.output)


_COMMANDS = {
    "analyze": _cmd_analyze,
    "scan": _cmd_scan,
    "rayclass": _cmd_rayclass,
    "survey-orders": _cmd_survey,
    "survey-ell-units": _cmd_survey,
    "survey-relations": _cmd_survey,
    "solve-norm": _cmd_solve_norm,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
    except UsageError as exc:
        sys.stderr.write(str(exc) + "\n")
        return EXIT_USAGE
    try:
        _COMMANDS[args.command](args)
    except errors.QuadTorsError as exc:
        sys.stdout.write(exc.to_json() + "\n")
        return EXIT_DOMAIN
    return EXIT_OK


run = main


if __name__ == "__main__":
    sys.exit(main())
