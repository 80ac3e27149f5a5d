"""
`verify`: run the self-checks and print a pass/fail table.
"""
from __future__ import annotations
import argparse
import logging

from cli.config import Config
from verify.checks import CheckResult, run_checks

logger = logging.getLogger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("verify", help="Check the fast structures against brute force")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.set_defaults(handler=run)


def format_table(results: list[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=4)
    lines = [f"{'check':<{width}}  result  detail"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.detail}")
    return "\n".join(lines)


def cmd_verify(level: str, config: Config) -> list[CheckResult]:
    return run_checks(level, node_budget=config.bfs_budget)


def run(args: argparse.Namespace, config: Config) -> int:
    results = cmd_verify(args.level, config)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 1
