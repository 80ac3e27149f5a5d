"""
`simulate`: one run, writing the per-iteration CSV and summary JSON and printing the summary.
"""
from __future__ import annotations
import argparse
import json
import logging
from pathlib import Path
from typing import Any

from cli.config import Config
from cli.services.scenario_runner import run_scenario
from core.fileio import write_labeling
from output.writers import write_json, write_records_csv
from schema.scenario import ScenarioConfig

logger = logging.getLogger(__name__)

_FLAG_FIELDS = (
    "tree", "evolver", "speedup", "init", "iterations", "seed",
    "truth_file", "hypothesis_file", "out_csv", "out_json", "audit_interval",
)


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("simulate", help="Run one tracking simulation")
    p.add_argument("--config", type=Path, help="JSON scenario file; flags override its values")
    p.add_argument("--tree", help="e.g. path:n=64, balanced:n=255,arity=2, wings:alpha=8,beta=4")
    p.add_argument("--evolver", help="uniform | greedy[:sample=k] | wings[:policy=halt|hold] | reversal | script:path=.. | idle")
    p.add_argument("--speedup", help="c as p/q, e.g. 2/1 or 5/2")
    p.add_argument("--init", choices=["exact", "reversed", "single", "random"])
    p.add_argument("--iterations", type=int, help="iteration budget (default max(50, 4*ceil(log2 n)))")
    p.add_argument("--seed", type=int)
    p.add_argument("--truth-file", dest="truth_file", help="starting truth, lines \"label vertex\" (a permutation)")
    p.add_argument("--hypothesis-file", dest="hypothesis_file", help="starting hypothesis; overrides --init")
    p.add_argument("--out-csv", dest="out_csv")
    p.add_argument("--out-json", dest="out_json")
    p.add_argument("--audit-interval", dest="audit_interval", type=int)
    p.add_argument("--labelings-out", dest="labelings_out", type=Path,
                   help="directory for the final truth.txt and hypothesis.txt")
    p.add_argument("--timestamp", action="store_true", help="add a generation timestamp line to the CSV")
    p.set_defaults(handler=run)


def load_scenario(args: argparse.Namespace) -> ScenarioConfig:
    data: dict[str, Any] = {}
    if args.config:
        data.update(json.loads(Path(args.config).read_text()))
    for name in _FLAG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    return ScenarioConfig.model_validate(data)


def cmd_simulate(
    scenario: ScenarioConfig,
    config: Config,
    timestamp: bool = False,
    labelings_out: Path | None = None,
) -> dict[str, Any]:
    outcome = run_scenario(scenario, config.audit_interval)
    csv_path = Path(scenario.out_csv) if scenario.out_csv else config.output_dir / "records.csv"
    json_path = Path(scenario.out_json) if scenario.out_json else config.output_dir / "summary.json"
    echo = scenario.model_dump(mode="json")
    write_records_csv(outcome.result.records, csv_path, echo, timestamp=timestamp)
    write_json(outcome.summary, json_path)
    if labelings_out:
        write_labeling(outcome.result.truth.label_to_vertex, labelings_out / "truth.txt")
        write_labeling(outcome.result.hyp.label_to_vertex, labelings_out / "hypothesis.txt")
    logger.info(f"[SIM DONE] records -> {csv_path}, summary -> {json_path}")
    return outcome.summary


def run(args: argparse.Namespace, config: Config) -> int:
    summary = cmd_simulate(load_scenario(args), config, timestamp=args.timestamp, labelings_out=args.labelings_out)
    print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    return 0
