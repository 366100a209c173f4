"""Command line entry point.

Usage::

    polynerve EXPR [--betti [--strict-torsion] [--max-m N]]
                   [--buchstaber [--search --max-entry B --seed S --budget-ms T]]
                   [--check-identities] [--polytopic] [--json] [--quiet]
    polynerve corpus [--max-m N] [--search] [--json] [--quiet]

With no section flag every default section runs: identities, the polytopic
check, Betti numbers when ``m <= 14`` and Buchstaber bounds. Naming one or
more sections runs only those.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import PolynerveError
from .report import AUTO_BETTI_MAX_M, ReportOptions, run_report


def _report_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polynerve", description="Invariants of a polytope given as an expression.")
    p.add_argument("expression", help='e.g. "pyr(polygon(4))" or \'file("p.json")\'')
    p.add_argument("--betti", action="store_true", help="bigraded Betti numbers")
    p.add_argument("--strict-torsion", action="store_true", help="record full subcomplexes with torsion")
    p.add_argument("--max-m", type=int, default=AUTO_BETTI_MAX_M, help="largest m for Betti numbers")
    p.add_argument("--buchstaber", action="store_true", help="Buchstaber number bounds")
    p.add_argument("--search", action="store_true", help="search for certificates beyond the bounds")
    p.add_argument("--max-entry", type=int, default=2, help="entry bound for the search")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized search")
    p.add_argument("--budget-ms", type=int, default=5000, help="time budget for the search")
    p.add_argument("--check-identities", action="store_true", help="face polynomial identities")
    p.add_argument("--polytopic", action="store_true", help="polytopic complex check")
    p.add_argument("--json", action="store_true", help="emit JSON (0-based labels)")
    p.add_argument("--quiet", action="store_true", help="print nothing, only set the exit code")
    return p


def _corpus_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polynerve corpus", description="Check every identity over the generated corpus.")
    p.add_argument("--max-m", type=int, default=12)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--search", action="store_true", help="run the certificate search on each entry")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true")
    return p


def _options(args: argparse.Namespace) -> ReportOptions:
    chosen = args.betti or args.buchstaber or args.check_identities or args.polytopic
    if not chosen:
        return ReportOptions(
            strict_torsion=args.strict_torsion,
            max_m=args.max_m,
            search=args.search,
            max_entry=args.max_entry,
            seed=args.seed,
            budget_ms=args.budget_ms,
        )
    return ReportOptions(
        identities=args.check_identities,
        polytopic=args.polytopic,
        betti=args.betti,
        strict_torsion=args.strict_torsion,
        max_m=args.max_m,
        buchstaber=args.buchstaber or args.search,
        search=args.search,
        max_entry=args.max_entry,
        seed=args.seed,
        budget_ms=args.budget_ms,
    )


def _run_corpus(argv: List[str]) -> int:
    from .corpus import run_corpus

    args = _corpus_parser().parse_args(argv)
    run = run_corpus(args.max_m, args.depth, search=args.search)
    if not args.quiet:
        if args.json:
            print(json.dumps(run.to_json(), indent=2))
        else:
            print(f"{len(run.results)} polytopes checked in {run.seconds:.1f} s")
            for r in run.failures:
                bad = [k for k, v in r.verdicts.items() if not v]
                print(f"FAIL {r.expression}: {', '.join(bad)}")
            for r in run.results:
                if r.single_torus_non_pyramid:
                    print(f"s = 1 but not a pyramid: {r.expression}")
    return 1 if run.failures else 0


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "corpus":
        return _run_corpus(argv[1:])
    args = _report_parser().parse_args(argv)
    try:
        rep = run_report(args.expression, _options(args))
    except (PolynerveError, OSError, ValueError) as exc:
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        print(json.dumps(rep.to_json(), indent=2) if args.json else rep.text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
