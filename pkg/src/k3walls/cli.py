"""Command-line front end: ``k3walls <command> [options]``.

Exit codes: 0 on success, 1 when a verification or certificate fails, 2 on
usage errors (argparse's own convention).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import gcd
from typing import Any, Optional, Sequence

from . import bounds
from .arith import cf_value, format_fraction, parse_cf, parse_fraction
from .lattice import LatticeError, format_divisor, parse_divisor
from .mukai import MukaiVector, line_bundle_vector, parse_mukai, twist_chain
from .pell import certify_family
from .suites import SUITES
from .walls import chamber_count, count_H, g_prime, g_sum, g_total

FORMATS = ("text", "json", "csv")


class Output:
    """Collects the command's output so it can be written in one go."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.buf = io.StringIO()

    def line(self, text: str = "") -> None:
        self.buf.write(text + "\n")

    def json(self, doc: Any) -> None:
        self.buf.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")

    def csv(self, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        writer = csv.writer(self.buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# -- argument converters -----------------------------------------------------

def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cf_arg(text: str) -> list[int]:
    try:
        terms = parse_cf(text)
        cf_value(terms)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return terms


def _vector_arg(text: str) -> MukaiVector:
    """A Mukai vector ``(r,D,s)``, a line bundle ``O(D)`` or a bare divisor ``D``."""
    try:
        if "(" in text or "," in text:
            return parse_mukai(text)
        return line_bundle_vector(parse_divisor(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(lo: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"expected an integer >= {lo}, got {value}")
        return value
    return convert


# -- helpers -----------------------------------------------------------------

def _vector_json(v: MukaiVector) -> list:
    return [v.rk, list(v.c1.coeffs), v.s]


def _table_rows_for(m: int) -> list[tuple[int, int, int]]:
    return [(m, n, chamber_count(Fraction(n, m))) for n in range(1, m // 2 + 1) if gcd(n, m) == 1]


# -- commands ----------------------------------------------------------------

def cmd_count(args: argparse.Namespace, out: Output) -> int:
    report = count_H(args.fraction)
    target = format_fraction(args.fraction)
    grouped = report.destabilizers_by_wall()
    if out.fmt == "json":
        walls = []
        for wall in report.walls:
            walls.append({
                "delta": list(wall.pq),
                "c": format_fraction(wall.position_c),
                "destabilizers": [
                    {"slope": format_fraction(d.slope), "k": d.k, "v": _vector_json(d.vector)}
                    for d in grouped[wall]
                ],
            })
        out.json({"target": target, "h": report.h_value, "walls": walls})
    elif out.fmt == "csv":
        if args.walls:
            out.csv(("target", "h", "delta_p", "delta_q", "c", "destabilizers"), [
                (target, report.h_value, *wall.pq, format_fraction(wall.position_c),
                 " ".join(f"{format_fraction(d.slope)}:{d.k}" for d in grouped[wall]))
                for wall in report.walls
            ])
        else:
            out.csv(("target", "h"), [(target, report.h_value)])
    else:
        out.line(f"H({target}) = {report.h_value}")
        if args.walls:
            for wall in report.walls:
                out.line(f"  wall δ = {format_divisor(wall.delta)}  c = {format_fraction(wall.position_c)}")
                for d in grouped[wall]:
                    out.line(f"    v({format_fraction(d.slope)}, {d.k}) = {d.vector}")
    return 0


def cmd_table(args: argparse.Namespace, out: Output) -> int:
    chunks = bounds.parallel_map(_table_rows_for, list(range(2, args.max_m + 1)), args.jobs)
    rows = [row for chunk in chunks for row in chunk]
    if out.fmt == "json":
        out.json({"max_m": args.max_m, "rows": [{"m": m, "n": n, "h": h} for m, n, h in rows]})
    elif out.fmt == "csv":
        out.csv(("m", "n", "h"), rows)
    else:
        for m, n, h in rows:
            out.line(f"{m:>5} {n:>5} {h:>6}")
    return 0


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = {name: SUITES[name]() for name in names}
    passed = all(c.passed for checks in results.values() for c in checks)
    if out.fmt == "json":
        out.json({
            "passed": passed,
            "suites": {
                name: {
                    "passed": all(c.passed for c in checks),
                    "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
                }
                for name, checks in results.items()
            },
        })
    elif out.fmt == "csv":
        out.csv(("suite", "check", "passed", "detail"),
                [(name, c.name, int(c.passed), c.detail) for name, checks in results.items() for c in checks])
    else:
        for name, checks in results.items():
            out.line(f"suite {name}")
            for c in checks:
                out.line("  " + c.line())
        out.line("OK" if passed else "FAILED")
    return 0 if passed else 1


def cmd_stats(args: argparse.Namespace, out: Output) -> int:
    rows = bounds.h_stats_range(args.min_m, args.max_m, args.jobs)
    if out.fmt == "json":
        out.json({"rows": [
            {"m": r.m, "phi": r.phi_m, "h_min": r.h_min, "h_ave": format_fraction(r.h_ave),
             "h_sum": r.h_sum, "ratio": round(r.ratio, 6)}
            for r in rows
        ]})
    elif out.fmt == "csv":
        out.csv(bounds.StatsRow.CSV_HEADER, [r.csv_fields() for r in rows])
    else:
        out.line(f"{'m':>5} {'phi':>5} {'h_min':>6} {'h_ave':>10} {'h_sum':>8} {'ratio':>9}")
        for r in rows:
            out.line(f"{r.m:>5} {r.phi_m:>5} {r.h_min:>6} {float(r.h_ave):>10.3f} {r.h_sum:>8} {r.ratio:>9.6f}")
    return 0


def cmd_gsum(args: argparse.Namespace, out: Output) -> int:
    m, r = args.m, args.r
    if r is not None:
        if not 1 <= r < m or gcd(m, r) != 1:
            raise _UsageError(f"gsum needs 1 <= r < m with gcd(m, r) = 1, got m={m}, r={r}")
        values = {"G(m,r)": g_sum(m, r)}
    else:
        values = {"G(m)": g_total(m), "G'(m)": g_prime(m)}
    if out.fmt == "json":
        out.json({"m": m, "r": r, **values})
    elif out.fmt == "csv":
        out.csv(("m", "r", *values), [(m, "" if r is None else r, *values.values())])
    elif r is not None:
        out.line(str(values["G(m,r)"]))
    else:
        out.line(f"G({m}) = {values['G(m)']}")
        g_dash = values["G'(m)"]
        out.line(f"G'({m}) = {g_dash}")
    return 0


def cmd_pell(args: argparse.Namespace, out: Output) -> int:
    certs = certify_family(args.count)
    ok = all(c.ok for c in certs)
    if out.fmt == "json":
        out.json({"ok": ok, "certificates": [c.to_json() for c in certs]})
    elif out.fmt == "csv":
        out.csv(("a", "b", "D", "E", "H", "v_V", "ok"), [
            (c.solution.x, c.solution.y, format_divisor(c.D), format_divisor(c.E),
             format_divisor(c.H), str(c.mukai_V), int(c.ok))
            for c in certs
        ])
    else:
        for c in certs:
            status = "certified" if c.ok else "FAILED"
            out.line(f"(a, b) = ({c.solution.x}, {c.solution.y}): {status}")
            out.line(f"  D = {format_divisor(c.D)}  E = {format_divisor(c.E)}  H = {format_divisor(c.H)}")
            out.line(f"  v(V) = {c.mukai_V}")
            for failure in c.failures():
                out.line(f"  failed {failure}")
    return 0 if ok else 1


def cmd_twist(args: argparse.Namespace, out: Output) -> int:
    try:
        result = twist_chain(args.start, args.by)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if out.fmt == "json":
        out.json({"start": _vector_json(args.start), "by": [_vector_json(w) for w in args.by],
                  "result": _vector_json(result)})
    elif out.fmt == "csv":
        out.csv(("rk", "c1", "s"), [(result.rk, format_divisor(result.c1), result.s)])
    else:
        out.line(str(result))
    return 0


def cmd_cf(args: argparse.Namespace, out: Output) -> int:
    value = cf_value(args.terms)
    h = chamber_count(value)
    if out.fmt == "json":
        out.json({"terms": args.terms, "value": format_fraction(value), "h": h})
    elif out.fmt == "csv":
        out.csv(("terms", "value", "h"), [(" ".join(map(str, args.terms)), format_fraction(value), h)])
    else:
        out.line(f"{format_fraction(value)}  H = {h}")
    return 0


class _UsageError(Exception):
    pass


# -- parser ------------------------------------------------------------------

def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=FORMATS, default=default("text"), help="output format")
    parser.add_argument("--jobs", type=_positive_int(1), default=default(1), metavar="N",
                        help="worker processes for table and stats")
    parser.add_argument("--out", default=default(None), metavar="FILE", help="write output to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="k3walls", description="Chamber counts for spherical classes on an elliptic K3.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "chamber count H(n/m)")
    p.add_argument("fraction", type=_fraction_arg, help='a slope such as "3/8" or "5"')
    p.add_argument("--walls", action="store_true", help="list walls and their destabilizers")

    p = add("table", cmd_table, "H(n/m) for all m <= M and coprime n <= m/2")
    p.add_argument("--max-m", type=_positive_int(2), default=10, metavar="M")

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")

    p = add("stats", cmd_stats, "min / average / sum of H(n/m) per m")
    p.add_argument("--max-m", type=_positive_int(2), default=100, metavar="M")
    p.add_argument("--min-m", type=_positive_int(2), default=2, metavar="M")

    p = add("gsum", cmd_gsum, "divisor sums G(m, r), or G(m) and G'(m)")
    p.add_argument("m", type=_positive_int(2))
    p.add_argument("r", type=_positive_int(1), nargs="?")

    p = add("pell", cmd_pell, "certificates for the Pell family")
    p.add_argument("--count", type=_positive_int(1), default=3, metavar="N")

    p = add("twist", cmd_twist, "apply spherical reflections left to right")
    p.add_argument("start", type=_vector_arg, help='start vector, e.g. "(1,2e-2s,-7)" or "O(2e-2s)"')
    p.add_argument("--by", type=_vector_arg, action="append", default=[], metavar="W",
                   help="reflect in W (a spherical vector or a divisor D meaning O(D)); repeatable")

    p = add("cf", cmd_cf, "value of a continued fraction [a1, ..., as] and its H")
    p.add_argument("terms", type=_cf_arg, help='e.g. "[2,3]"')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "min_m", 2) > getattr(args, "max_m", 2):
        parser.error("--min-m must not exceed --max-m")
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except (_UsageError, LatticeError) as exc:
        parser.error(str(exc))
    text = out.buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
