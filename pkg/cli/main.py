"""
Command-line entry point: python -m cli.main <simulate|sweep|adversary-script|verify> ...
"""
from __future__ import annotations
import argparse
import logging
import sys
from typing import Sequence

from pydantic import ValidationError

from cli.commands import adversary, simulate, sweep, verify
from cli.config import get_config
from engine.tracker import InvariantViolation

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evotrack",
        description="Track labels on a tree while an evolver keeps swapping them.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (simulate, sweep, adversary, verify):
        module.add_parser(subparsers)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = get_config()
    except RuntimeError as e:
        parser.error(str(e))

    level = logging.DEBUG if args.verbose else getattr(logging, config.log_level)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        return args.handler(args, config)
    except (ValidationError, ValueError) as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"{parser.prog} {args.command}: {e}", file=sys.stderr)
        return 1
    except InvariantViolation as e:
        logger.error(f"[INVARIANT] {e}")
        print(f"{parser.prog} {args.command}: invariant violated: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
