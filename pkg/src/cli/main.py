"""
Argument parsing, logging setup and error-to-exit-code mapping.

Exit codes: 0 success, 1 packing/solver/comparison failure, 2 malformed input.
"""
import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from src.cli.registry import get_all_commands
from src.domain.errors import CirclePackingError, PartitionError, SurfaceFormatError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_MALFORMED = 2

MALFORMED_INPUT = (SurfaceFormatError, PartitionError, json.JSONDecodeError, FileNotFoundError, IsADirectoryError)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circle-packing",
        description="Inversive distance circle packings: curvature, prescribed-curvature solver, comparison checks.",
        epilog="Vertex arguments are 1-based; vertex indices inside JSON files are 0-based.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in get_all_commands().values():
        sub = subparsers.add_parser(command.name, help=command.help, description=command.help)
        command.configure(sub)
        sub.set_defaults(handler=command.handler)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch to exactly one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags and 0 on --help
        return EXIT_OK if exc.code in (None, 0) else EXIT_MALFORMED
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except MALFORMED_INPUT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except CirclePackingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
