"""
`sweep`: grid of (size, speedup, evolver) cells, one aggregated CSV row each.
"""
from __future__ import annotations
import argparse
import json
import logging
from pathlib import Path
from typing import Any

from cli.config import Config
from cli.services.sweep_service import run_sweep
from output.excel_report import write_sweep_xlsx
from output.writers import write_sweep_csv
from schema.scenario import SweepSpec

logger = logging.getLogger(__name__)


def _csv_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(";" if ";" in text else ",") if item.strip()]


def _int_list(text: str) -> list[int]:
    return [int(item) for item in _csv_list(text)]


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("sweep", help="Run a parameter sweep")
    p.add_argument("--config", type=Path, help="JSON sweep file; flags override its values")
    p.add_argument("--family", choices=["path", "balanced", "random", "wings"])
    p.add_argument("--sizes", type=_int_list, help="comma-separated n values")
    p.add_argument("--speedups", type=_csv_list, help="comma-separated p/q values")
    p.add_argument("--evolvers", type=_csv_list,
                   help="evolver specs; separate with ';' when a spec has its own commas")
    p.add_argument("--reps", dest="repetitions", type=int)
    p.add_argument("--init", choices=["exact", "reversed", "single", "random"])
    p.add_argument("--iterations", type=int)
    p.add_argument("--master-seed", dest="master_seed", type=int)
    p.add_argument("--arity", type=int)
    p.add_argument("--degree", type=int, help="degree bound k for random trees")
    p.add_argument("--wings-beta", dest="wings_beta", type=int)
    p.add_argument("--tails", choices=["leaves", "chain"])
    p.add_argument("--audit-interval", dest="audit_interval", type=int)
    p.add_argument("--jobs", type=int, help="worker processes (default EVOTRACK_JOBS)")
    p.add_argument("--out", type=Path, help="aggregated CSV path")
    p.add_argument("--xlsx", type=Path, help="also write a colour-coded workbook")
    p.add_argument("--timestamp", action="store_true")
    p.set_defaults(handler=run)


_SWEEP_FIELDS = (
    "family", "sizes", "speedups", "evolvers", "repetitions", "init", "iterations",
    "master_seed", "arity", "degree", "wings_beta", "tails", "audit_interval",
)


def load_sweep(args: argparse.Namespace) -> SweepSpec:
    data: dict[str, Any] = {}
    if args.config:
        data.update(json.loads(Path(args.config).read_text()))
    for name in _SWEEP_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    return SweepSpec.model_validate(data)


def cmd_sweep(
    sweep: SweepSpec,
    config: Config,
    out: Path | None = None,
    xlsx: Path | None = None,
    jobs: int | None = None,
    timestamp: bool = False,
) -> list[dict[str, Any]]:
    rows = run_sweep(sweep, jobs=jobs or config.jobs, audit_interval=config.audit_interval)
    echo = sweep.model_dump(mode="json")
    write_sweep_csv(rows, out or config.output_dir / "sweep.csv", echo, timestamp=timestamp)
    if xlsx:
        try:
            stats = write_sweep_xlsx(rows, xlsx, echo)
            logger.info(f"[SWEEP DONE] xlsx report: {stats}")
        except Exception as e:
            logger.warning(f"[SWEEP DONE] xlsx report failed: {e}")
    return rows


def run(args: argparse.Namespace, config: Config) -> int:
    rows = cmd_sweep(load_sweep(args), config, out=args.out, xlsx=args.xlsx, jobs=args.jobs, timestamp=args.timestamp)
    failed = sum(1 for r in rows if r["status"] != "ok")
    print(f"{len(rows)} cells, {failed} not ok")
    return 0
