"""
LE-ALC Reasoner - consistency checking for lattice-based ALC knowledge bases
Command-line entry point
"""

import argparse
import logging
import sys
from typing import List, Optional

from lealc import __app_name__, __version__
from lealc.cli import register_batch, register_check
from lealc.core.config import get_settings
from lealc.core.exceptions import LeAlcError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lealc", description=__app_name__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for every rule application")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_check(subparsers)
    register_batch(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    settings = get_settings()
    if verbosity >= 2 or settings.debug:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    logging.getLogger().setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except LeAlcError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
