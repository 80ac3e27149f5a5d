"""
CSV and JSON writers for runs and sweeps.

Every CSV starts with a `# config: {json}` line; `timestamp=True` adds a
`# generated: ...` line after it.
"""
from __future__ import annotations
import csv
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from engine.simulation import RECORD_FIELDS, IterationRecord

logger = logging.getLogger(__name__)

SWEEP_FIELDS = (
    "tree", "n", "c", "evolver", "reps", "completed",
    "steady_state_mean_D", "D_over_n", "D_over_n2", "final_D",
    "max_load", "max_load_over_sqrt_n", "lemma_violations", "status",
)


def _prepare(path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _header_lines(config: Mapping[str, Any], timestamp: bool) -> list[str]:
    lines = [f"# config: {json.dumps(config, sort_keys=True, default=str)}\n"]
    if timestamp:
        lines.append(f"# generated: {datetime.now(timezone.utc).isoformat()}\n")
    return lines


def write_records_csv(
    records: Iterable[IterationRecord],
    path: str | Path,
    config: Mapping[str, Any],
    timestamp: bool = False,
) -> Path:
    path = _prepare(path)
    with path.open("w", newline="") as f:
        f.writelines(_header_lines(config, timestamp))
        writer = csv.writer(f)
        writer.writerow(RECORD_FIELDS)
        for r in records:
            writer.writerow(r.as_row())
    return path


def write_sweep_csv(
    rows: Sequence[Mapping[str, Any]],
    path: str | Path,
    config: Mapping[str, Any],
    timestamp: bool = False,
) -> Path:
    path = _prepare(path)
    with path.open("w", newline="") as f:
        f.writelines(_header_lines(config, timestamp))
        writer = csv.DictWriter(f, fieldnames=SWEEP_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(row.get(k)) for k in SWEEP_FIELDS})
    logger.info(f"[SWEEP DONE] wrote {len(rows)} rows to {path}")
    return path


def _fmt(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return value


def write_json(data: Mapping[str, Any], path: str | Path) -> Path:
    path = _prepare(path)
    path.write_text(json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")
    return path


def read_csv_config(path: str | Path) -> dict[str, Any]:
    """Config echo from the first line of a CSV written here."""
    with Path(path).open() as f:
        first = f.readline()
    prefix = "# config: "
    if not first.startswith(prefix):
        raise ValueError(f"{path}: no config line")
    return json.loads(first[len(prefix):])


def read_csv_rows(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open(newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))
