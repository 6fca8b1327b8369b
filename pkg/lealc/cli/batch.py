"""
Batch and generate commands
"""

import argparse
import logging
from pathlib import Path
from typing import Iterable, List

from lealc.services.batch_service import batch_service
from lealc.services.generators import FAMILY_KINDS, write_family

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("batch", help="Check many knowledge bases and summarise them")
    parser.add_argument("paths", nargs="*", type=Path, help="files, or directories of *.kb files")
    parser.add_argument("--csv", type=Path, metavar="PATH", help="also write the summary table as CSV")
    parser.add_argument("--parallelism", type=int, metavar="N", help="worker threads")
    parser.add_argument("--max-steps", type=int, metavar="N", help="safety limit on rule applications")
    parser.set_defaults(handler=run_batch)

    generate = subparsers.add_parser("generate", help="Write a family of knowledge bases of growing size")
    generate.add_argument("kind", choices=FAMILY_KINDS)
    generate.add_argument("--sizes", type=int, nargs="+", default=[10, 25, 50, 100, 200])
    generate.add_argument("--out", type=Path, default=Path("generated"))
    generate.set_defaults(handler=run_generate)


def expand_paths(paths: Iterable[Path]) -> List[Path]:
    result = []
    for path in paths:
        if path.is_dir():
            result.extend(sorted(path.glob("*.kb")))
        else:
            result.append(path)
    return result


def run_batch(args: argparse.Namespace) -> int:
    files = expand_paths(args.paths)
    summary = batch_service.run_batch(files, args.parallelism, args.max_steps)
    if summary.empty:
        print("no files")
    else:
        print(summary.to_string(index=False))

    exponent, r_squared = batch_service.growth_exponent(summary)
    if exponent is not None:
        print(f"growth exponent of steps over size: {exponent:.3f} (r^2 = {r_squared:.3f})")

    if args.csv is not None:
        summary.to_csv(args.csv, index=False)
        logger.info(f"Summary written to {args.csv}")
    return 0


def run_generate(args: argparse.Namespace) -> int:
    for path in write_family(args.out, args.kind, args.sizes):
        print(path)
    return 0
