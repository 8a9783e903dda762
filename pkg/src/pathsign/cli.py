"""Command line entry point: generate, verify, analyze.

Exit codes: 0 = all checks pass, 1 = a violation was found, 2 = a search
was inconclusive (budget), 3 = input or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .construction import DEFAULT_VERTEX_BUDGET, construct
from .errors import PathsignError
from .formats import (
    FAIL,
    PASS,
    export_dimacs,
    export_signed,
    import_dimacs,
    import_signed,
    write_checks_tsv,
    write_report,
)
from .graphs import SignedDigraph, UndirectedGraph, underlying
from .lemmas import ALL_SUITES, verify_suites
from .solvers import (
    Budget,
    PROVED,
    chordless_dicycles,
    chromatic_number,
    dichromatic_number,
    max_clique,
)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with status 2 by default; usage problems are
        # input errors here (exit 3)
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _default_threads() -> int:
    raw = os.environ.get("PATHSIGN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _build_parser() -> _Parser:
    parser = _Parser(prog="pathsign", description=__doc__)
    parser.add_argument("--version", action="version", version=f"pathsign {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a level and export it")
    gen.add_argument("--n", type=int, required=True, help="construction level (>= 1)")
    gen.add_argument("--out", type=Path, help="write the signed digraph (.sdg)")
    gen.add_argument("--dimacs", type=Path, help="write the underlying graph (.col)")
    gen.add_argument(
        "--vertex-budget",
        type=int,
        default=DEFAULT_VERTEX_BUDGET,
        help="refuse constructions above this many vertices",
    )

    ver = sub.add_parser("verify", help="run verification suites")
    src = ver.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="construct and verify this level")
    src.add_argument("--in", dest="infile", type=Path, help="verify a .sdg file")
    ver.add_argument(
        "--suite",
        choices=[*ALL_SUITES, "all"],
        default="all",
    )
    ver.add_argument("--seed", type=int, help="seed for all sampling")
    ver.add_argument("--samples", type=int, default=10_000)
    ver.add_argument("--max-cycle-len", type=int, default=9)
    ver.add_argument("--report", type=Path, help="write the JSON report here")
    ver.add_argument(
        "--no-figures",
        action="store_true",
        help="skip rendering figures next to the report",
    )
    ver.add_argument("--time-limit-ms", type=int, default=600_000)
    ver.add_argument("--node-limit", type=int, default=10**9)
    ver.add_argument("--threads", type=int, default=_default_threads())
    ver.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET)

    ana = sub.add_parser("analyze", help="compute a quantity of a graph file")
    ana.add_argument("--in", dest="infile", type=Path, required=True)
    ana.add_argument(
        "--format", choices=["auto", "sdg", "dimacs"], default="auto"
    )
    ana.add_argument(
        "--what", choices=["clique", "chroma", "dichi", "cycles"], required=True
    )
    ana.add_argument("--min", dest="min_len", type=int, default=3)
    ana.add_argument("--max", dest="max_len", type=int, default=8)
    ana.add_argument("--odd-only", action="store_true")
    ana.add_argument("--report", type=Path, help="write the certificate here")
    ana.add_argument("--time-limit-ms", type=int, default=600_000)
    ana.add_argument("--node-limit", type=int, default=10**9)
    ana.add_argument("--threads", type=int, default=_default_threads())
    return parser


def _cmd_generate(args) -> int:
    base, _, derived = construct(args.n, args.vertex_budget)
    if args.out:
        export_signed(derived, args.out)
    if args.dimacs:
        export_dimacs(underlying(derived), args.dimacs)
    print(
        f"n={args.n} v={base.vertex_count} "
        f"e+={derived.positive_edge_count} e-={derived.negative_edge_count}"
    )
    return EXIT_PASS


def _make_budget(args) -> Budget:
    if args.node_limit <= 0 or args.time_limit_ms <= 0:
        raise PathsignError("budgets must be positive")
    return Budget(args.node_limit, args.time_limit_ms / 1000.0)


def _cmd_verify(args) -> int:
    budget = _make_budget(args)
    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    signed = import_signed(args.infile) if args.infile else None
    report = verify_suites(
        n=args.n,
        signed=signed,
        suites=suites,
        budget=budget,
        seed=args.seed,
        samples=args.samples,
        max_cycle_len=args.max_cycle_len,
        threads=args.threads,
        vertex_budget=args.vertex_budget,
    )
    for check in report.checks:
        print(f"[{check.status}] {check.name}: {check.summary}")
    print(f"overall: {report.overall_status}")
    if args.report:
        write_report(report, args.report)
        tsv = args.report.with_suffix(".checks.tsv")
        write_checks_tsv(report, tsv)
        print(f"report written to {args.report}")
        if not args.no_figures:
            from .figures import render_report_figures

            figures = render_report_figures(
                report, args.report.parent, prefix=f"{args.report.stem}."
            )
            for path in figures:
                print(f"figure written to {path}")
    status = report.overall_status
    if status == PASS:
        return EXIT_PASS
    if status == FAIL:
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE


def _load_graph(args):
    fmt = args.format
    if fmt == "auto":
        suffix = args.infile.suffix.lower()
        if suffix in (".col", ".dimacs"):
            fmt = "dimacs"
        elif suffix == ".sdg":
            fmt = "sdg"
        else:
            raise PathsignError(
                f"cannot infer format of {args.infile}; pass --format"
            )
    if fmt == "dimacs":
        return import_dimacs(args.infile)
    return import_signed(args.infile)


def _write_certificate(args, payload: dict) -> None:
    if args.report:
        import json

        args.report.write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="ascii"
        )


def _cmd_analyze(args) -> int:
    graph = _load_graph(args)
    budget = _make_budget(args)
    what = args.what
    if what in ("dichi", "cycles") and isinstance(graph, UndirectedGraph):
        raise PathsignError(f"{what} needs a signed digraph (.sdg), not DIMACS")
    if what == "clique":
        g = underlying(graph) if isinstance(graph, SignedDigraph) else graph
        outcome = max_clique(g, budget)
        if outcome.status != PROVED:
            print(f"inconclusive (best found {len(outcome.witness)})")
            return EXIT_INCONCLUSIVE
        print(outcome.value)
        _write_certificate(
            args,
            {
                "what": "clique",
                "value": outcome.value,
                "witness": list(outcome.witness),
                "nodes": outcome.stats.nodes,
            },
        )
        return EXIT_PASS
    if what == "chroma":
        g = underlying(graph) if isinstance(graph, SignedDigraph) else graph
        outcome = chromatic_number(g, budget)
        if outcome.status != PROVED:
            print(
                f"inconclusive (between {outcome.lower_bound} and "
                f"{outcome.upper_bound})"
            )
            return EXIT_INCONCLUSIVE
        print(outcome.value)
        _write_certificate(
            args,
            {
                "what": "chroma",
                "value": outcome.value,
                "witness": list(outcome.witness.colors),
                "nodes": outcome.stats.nodes,
            },
        )
        return EXIT_PASS
    if what == "dichi":
        outcome = dichromatic_number(graph, budget)
        if outcome.status != PROVED:
            print(
                f"inconclusive (between {outcome.lower_bound} and "
                f"{outcome.upper_bound})"
            )
            return EXIT_INCONCLUSIVE
        print(outcome.value)
        _write_certificate(
            args,
            {
                "what": "dichi",
                "value": outcome.value,
                "witness": list(outcome.witness.colors),
                "nodes": outcome.stats.nodes,
            },
        )
        return EXIT_PASS
    only = None
    if args.odd_only:
        only = [length for length in range(args.min_len, args.max_len + 1) if length % 2]
    scan = chordless_dicycles(
        graph,
        args.min_len,
        args.max_len,
        only_lengths=only,
        budget=budget,
        threads=args.threads,
    )
    if scan.cycles:
        for cycle in scan.cycles:
            print(" ".join(str(v) for v in cycle))
    else:
        print("none")
    _write_certificate(
        args,
        {
            "what": "cycles",
            "min": args.min_len,
            "max": args.max_len,
            "odd_only": args.odd_only,
            "cycles": [list(c) for c in scan.cycles],
            "complete": scan.complete,
            "nodes": scan.nodes,
        },
    )
    return EXIT_PASS if scan.complete else EXIT_INCONCLUSIVE


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_analyze(args)
    except PathsignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
