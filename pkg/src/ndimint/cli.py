"""Command line front end.

    ndimint eval --a 1,2 --methods ndim,residue,quad [--format table|json|csv]
    ndimint corpus [PATH]
    ndimint identities [--suite NAME] [--max-q N] [--branch plus-i|minus-i]

Exit status: 0 when every comparison is within tolerance, 1 when one is not,
2 for bad arguments or an unreadable corpus, 3 when an evaluation method fails.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .identities import DEFAULT_SUITES, EXTRA_SUITES, run_suites
from .ndim_core import to_fraction
from .oracles.corpus import CorpusParse, builtin_corpus_path, check_entry, load_corpus
from .oracles.quadrature import PANELS, QuadratureError, QuadratureRequest, integrate_numeric
from .oracles.residues import RationalIntegrand, integrate_by_residues
from .report import METHODS, EvaluationReport, dumps, to_csv, to_table
from .resum import NotConverged, closed_form, resum_exp_series, term_table

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_METHOD = 0, 1, 2, 3

BRANCHES = {"plus-i": +1, "minus-i": -1}


class ConfigParse(ValueError):
    pass


class MethodFailure(RuntimeError):
    def __init__(self, method: str, cause: Exception):
        self.method = method
        super().__init__(f"method {method!r} failed: {type(cause).__name__}: {cause}")


def parse_a_values(text: str) -> list[Fraction]:
    """'1,2,5' or a range 'start:stop:step' (stop inclusive), or a mix of both."""
    values: list[Fraction] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            if ":" in chunk:
                start, stop, step = (to_fraction(p) for p in chunk.split(":"))
                if step <= 0:
                    raise ConfigParse(f"range step must be positive in {chunk!r}")
                x = start
                while x <= stop:
                    values.append(x)
                    x += step
            else:
                values.append(to_fraction(chunk))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ConfigParse):
                raise
            raise ConfigParse(f"bad a value {chunk!r}") from None
    if not values:
        raise ConfigParse("no a values given")
    bad = [v for v in values if v <= 0]
    if bad:
        raise ConfigParse(f"a values must be positive, got {bad[0]}")
    return values


def parse_methods(text: str) -> tuple[str, ...]:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ConfigParse(f"unknown method(s) {', '.join(unknown)}; choose from {', '.join(METHODS)}")
    if not methods:
        raise ConfigParse("select at least one method")
    # canonical order, no duplicates
    return tuple(m for m in METHODS if m in methods)


def evaluate(a: Fraction, methods: Sequence[str], args: argparse.Namespace) -> EvaluationReport:
    af = float(a)
    rep = EvaluationReport(a=af, a_exact=str(a), methods=tuple(methods), closed_form=closed_form(a))
    if "ndim" in methods:
        t0 = time.perf_counter()
        try:
            value, diag = resum_exp_series(a, args.stop_tol, args.max_terms)
        except NotConverged as exc:
            raise MethodFailure("ndim", exc) from exc
        rep.timing_ms["ndim"] = (time.perf_counter() - t0) * 1e3
        rep.ndim_value = value
        rep.series = {
            "terms_used": diag.terms_used,
            "last_term_magnitude": diag.last_term_magnitude,
            "converged": diag.converged,
            "tail": diag.partial_sums,
        }
    if "residue" in methods:
        t0 = time.perf_counter()
        try:
            z = integrate_by_residues(RationalIntegrand((1.0,), ((complex(0, af), 1),), omega=1.0))
        except Exception as exc:
            raise MethodFailure("residue", exc) from exc
        rep.timing_ms["residue"] = (time.perf_counter() - t0) * 1e3
        rep.residue_value = z.real
    if "quad" in methods:
        t0 = time.perf_counter()
        req = QuadratureRequest(
            lambda x: math.cos(x) / (x * x + af * af),
            abs_tol=args.abs_tol,
            rel_tol=args.rel_tol,
            transform=PANELS,
            omega=1.0,
            scale=af,
        )
        try:
            res = integrate_numeric(req)
        except (QuadratureError, ValueError) as exc:
            raise MethodFailure("quad", exc) from exc
        rep.timing_ms["quad"] = (time.perf_counter() - t0) * 1e3
        rep.quadrature_value = res.value
        rep.quadrature_error = res.error_estimate
        rep.quadrature_evaluations = res.evaluations
    if args.terms_table is not None:
        rep.terms = [
            {
                "m": row.m,
                "series_phase": str(row.series_phase),
                "moment_phase": str(row.moment_phase),
                "combined_phase": str(row.combined_phase),
                "term_exact": str(row.term),
                "term": float(row.term),
                "partial_sum": row.partial_sum,
            }
            for row in term_table(a, args.terms_table)
        ]
    return rep


def cmd_eval(args: argparse.Namespace, out) -> int:
    a_values = parse_a_values(args.a)
    methods = parse_methods(args.methods)
    reports = [evaluate(a, methods, args) for a in a_values]
    ok = all(r.max_relative_discrepancy() <= args.compare_tol for r in reports)

    if args.format == "json":
        out.write(dumps({"command": "eval", "compare_tol": args.compare_tol, "ok": ok, "reports": [r.to_dict() for r in reports]}) + "\n")
    elif args.format == "csv":
        rows = []
        for r in reports:
            d = r.to_dict()
            d.pop("terms", None)
            d.pop("series", None)
            if r.series is not None:
                d["series"] = {k: v for k, v in r.series.items() if k != "tail"}
            rows.append(d)
        out.write(to_csv(rows))
        for r in reports:
            if r.terms is not None:
                out.write("\n" + to_csv([dict(a=r.a_exact, **t) for t in r.terms]))
    else:
        headers = ["a", "closed form"] + [m for m in METHODS if m in methods] + ["max rel disc"]
        rows = []
        for r in reports:
            vals = r.values()
            rows.append([r.a_exact, r.closed_form] + [vals.get(m) for m in METHODS if m in methods] + [r.max_relative_discrepancy()])
        out.write(to_table(headers, rows) + "\n")
        for r in reports:
            if r.terms is not None:
                out.write(f"\nterm ledger, a = {r.a_exact}\n")
                out.write(
                    to_table(
                        ["m", "i^m", "moment phase", "term", "partial sum"],
                        [[t["m"], t["series_phase"], t["moment_phase"], t["term_exact"], t["partial_sum"]] for t in r.terms],
                    )
                    + "\n"
                )
        out.write(("PASS" if ok else "FAIL") + f" (tolerance {args.compare_tol:g})\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_corpus(args: argparse.Namespace, out) -> int:
    path = args.path or builtin_corpus_path()
    entries = load_corpus(path)
    outcomes = [check_entry(e, args.abs_tol, args.rel_tol) for e in entries]
    passed = sum(o.passed for o in outcomes)
    ok = passed == len(outcomes)
    records = []
    for o in outcomes:
        records.append(
            {
                "line": o.entry.line,
                "label": o.entry.label,
                "omega": o.entry.integrand.omega,
                "residue": None if o.residue is None else {"re": o.residue.real, "im": o.residue.imag},
                "quadrature": None if o.quadrature is None else {"re": o.quadrature.real, "im": o.quadrature.imag},
                "discrepancy": o.discrepancy,
                "evaluations": o.evaluations,
                "passed": o.passed,
                "message": o.message,
            }
        )
    summary = {"entries": len(outcomes), "passed": passed, "failed": len(outcomes) - passed}
    if args.format == "json":
        out.write(dumps({"command": "corpus", "path": str(path), "summary": summary, "ok": ok, "results": records}) + "\n")
    elif args.format == "csv":
        out.write(to_csv(records))
    else:
        if records:
            out.write(
                to_table(
                    ["line", "label", "omega", "residue", "quadrature", "|diff|", "ok"],
                    [
                        [r["line"], r["label"], r["omega"], _cplx(o.residue), _cplx(o.quadrature), r["discrepancy"], "yes" if r["passed"] else "NO"]
                        for r, o in zip(records, outcomes)
                    ],
                )
                + "\n"
            )
            for r in records:
                if r["message"]:
                    out.write(f"line {r['line']} ({r['label']}): {r['message']}\n")
        out.write(f"{passed}/{len(outcomes)} passed\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cplx(z: Optional[complex]) -> str:
    if z is None:
        return "-"
    if z.imag == 0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def cmd_identities(args: argparse.Namespace, out) -> int:
    names = tuple(args.suite) if args.suite else DEFAULT_SUITES
    results = run_suites(names, max_q=args.max_q, branch=BRANCHES[args.branch])
    ok = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "command": "identities",
            "branch": args.branch,
            "ok": ok,
            "suites": [
                {"name": r.name, "passed": r.passed, "checked": r.checked, "failures": r.failures, "info": r.info}
                for r in results
            ],
        }
        out.write(dumps(payload) + "\n")
    elif args.format == "csv":
        out.write(to_csv([{"suite": r.name, "passed": r.passed, "checked": r.checked, "failures": len(r.failures)} for r in results]))
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.checked} checks)\n")
            for msg in r.failures[:5]:
                out.write(f"      {msg}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ndimint", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json", "csv"), default="table")

    ev = sub.add_parser("eval", parents=[fmt], help="evaluate int e^{ix}/(x^2+a^2) dx by each method")
    ev.add_argument("--a", required=True, help="comma list and/or start:stop:step ranges")
    ev.add_argument("--methods", default="ndim,residue,quad")
    ev.add_argument("--stop-tol", type=float, default=1e-15, help="series stop tolerance")
    ev.add_argument("--max-terms", type=int, default=400)
    ev.add_argument("--abs-tol", type=float, default=1e-13, help="quadrature absolute tolerance")
    ev.add_argument("--rel-tol", type=float, default=1e-12, help="quadrature relative tolerance")
    ev.add_argument("--compare-tol", type=float, default=1e-9, help="max allowed pairwise relative discrepancy")
    ev.add_argument("--terms-table", type=int, metavar="M", help="include the term ledger for m = 0..M")
    ev.set_defaults(func=cmd_eval)

    co = sub.add_parser("corpus", parents=[fmt], help="residue vs quadrature over a corpus file")
    co.add_argument("path", nargs="?", help="JSON-lines corpus (default: built-in)")
    co.add_argument("--abs-tol", type=float, default=1e-9)
    co.add_argument("--rel-tol", type=float, default=1e-8)
    co.set_defaults(func=cmd_corpus)

    ide = sub.add_parser("identities", parents=[fmt], help="run the exact identity suites")
    ide.add_argument("--suite", action="append", choices=DEFAULT_SUITES + EXTRA_SUITES)
    ide.add_argument("--max-q", type=int, default=20)
    ide.add_argument("--branch", choices=tuple(BRANCHES), default="minus-i", help="(-1)^(1/2) used by the reflection")
    ide.set_defaults(func=cmd_identities)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ConfigParse as exc:
        print(f"ndimint {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorpusParse as exc:
        print(f"ndimint corpus: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ndimint {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MethodFailure as exc:
        print(f"ndimint {args.command}: {exc}", file=sys.stderr)
        return EXIT_METHOD


if __name__ == "__main__":
    sys.exit(main())
