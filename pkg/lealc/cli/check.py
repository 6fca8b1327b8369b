"""
Check command
Parses one knowledge base, unravels its TBox, runs the tableau and emits
the verdict with the optional model, trace, statistics and oracle report
"""

import argparse
import logging
import sys
from pathlib import Path

from lealc.core.exceptions import KBParseError
from lealc.services.fca_service import fca_service
from lealc.services.oracle_service import oracle_service
from lealc.services.tableau_service import Verdict, tableau_service
from lealc.services.tbox_service import tbox_service
from lealc.syntax.parser import parse_kb, render_kb
from lealc.syntax.terms import render_term

logger = logging.getLogger(__name__)

EXIT_CONSISTENT = 0
EXIT_INCONSISTENT = 1
EXIT_ORACLE_DISAGREEMENT = 4


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Check the consistency of a knowledge base")
    parser.add_argument("file", type=Path, help="knowledge-base file")
    parser.add_argument("--model-out", type=Path, metavar="PATH", help="write the extracted model as JSON")
    parser.add_argument("--trace", type=Path, metavar="PATH", help="write the rule application trace as JSON")
    parser.add_argument("--stats", action="store_true", help="print run statistics")
    parser.add_argument("--unravel-only", action="store_true",
                        help="print the unravelled knowledge base and stop")
    parser.add_argument("--oracle-max", type=int, metavar="N",
                        help="cross-check against brute-force search on carriers of size up to N")
    parser.add_argument("--max-steps", type=int, metavar="N", help="safety limit on rule applications")
    parser.set_defaults(handler=run_check)


def verdict_line(verdict: Verdict) -> str:
    if verdict.consistent:
        return "consistent"
    beta, negated = verdict.clash
    return f"inconsistent: clash between {render_term(beta)} and {render_term(negated)}"


def run_check(args: argparse.Namespace) -> int:
    try:
        text = args.file.read_text(encoding="utf-8")
    except OSError as e:
        raise KBParseError(f"cannot read {args.file}: {e.strerror or e}")

    kb = parse_kb(text)
    abox, signature, regime = tbox_service.prepare(kb)

    if args.unravel_only:
        sys.stdout.write(render_kb(abox, signature))
        return EXIT_CONSISTENT

    verdict = tableau_service.saturate(abox, signature, max_steps=args.max_steps)
    verdict.stats.regime = regime
    print(verdict_line(verdict))

    if args.model_out is not None:
        if verdict.model is None:
            logger.warning("No model written: the knowledge base is inconsistent")
        else:
            document = fca_service.to_document(verdict.model)
            args.model_out.write_text(document.model_dump_json(indent=2), encoding="utf-8")
            logger.info(f"Model written to {args.model_out}")

    if args.trace is not None:
        document = tableau_service.trace_document(verdict)
        args.trace.write_text(document.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Trace of {len(document.records)} steps written to {args.trace}")

    if args.stats:
        print(f"regime: {regime.value}")
        print(verdict.stats.model_dump_json(indent=2))

    if args.oracle_max is not None:
        report = oracle_service.cross_check(abox, args.oracle_max, signature)
        print(f"oracle: {'agree' if report.agree else 'DISAGREE'} ({report.note})")
        if not report.agree:
            sys.stderr.write(render_kb(abox, signature))
            sys.stderr.write(report.model_dump_json(indent=2) + "\n")
            return EXIT_ORACLE_DISAGREEMENT

    return EXIT_CONSISTENT if verdict.consistent else EXIT_INCONSISTENT
