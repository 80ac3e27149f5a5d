"""
Sweep service: expands a SweepSpec into cells (tree size x speedup x evolver),
runs the repetitions of each cell, and aggregates one row per cell.
"""
from __future__ import annotations
import concurrent.futures
import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from cli.services.scenario_runner import run_scenario
from engine.simulation import DEFAULT_AUDIT_INTERVAL
from schema.scenario import ScenarioConfig, SweepSpec, parse_evolver_spec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepCell:
    index: int
    n: int               # target size; wings cells round it to the nearest construction
    speedup: str
    evolver: str


def expand_cells(sweep: SweepSpec) -> list[SweepCell]:
    cells = []
    for n in sweep.sizes:
        for c in sweep.speedups:
            for evolver in sweep.evolvers:
                cells.append(SweepCell(len(cells), n, c, evolver))
    return cells


def rep_seed(master_seed: int, cell: int, rep: int) -> int:
    return int(np.random.SeedSequence([master_seed, cell, rep]).generate_state(1)[0])


def cell_tree_seed(master_seed: int, cell: int) -> int:
    """One tree per cell, shared by its repetitions."""
    return int(np.random.SeedSequence([master_seed, cell]).generate_state(1)[0])


def _mean(values: list[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    return float(np.mean(present)) if present else None


def _halting_script(evolver: str) -> bool:
    spec = parse_evolver_spec(evolver)
    return spec.name in ("wings", "reversal", "script") and spec.get("policy") == "halt"


def run_cell(sweep: SweepSpec, cell: SweepCell, audit_interval: int = DEFAULT_AUDIT_INTERVAL) -> dict[str, Any]:
    """All repetitions of one cell; a failed repetition is logged and left out of the means."""
    tree_spec = sweep.tree_spec_for(cell.n, cell_tree_seed(sweep.master_seed, cell.index))
    summaries = []
    for rep in range(sweep.repetitions):
        config = ScenarioConfig(
            tree=tree_spec,
            evolver=cell.evolver,
            speedup=cell.speedup,
            init=sweep.init,
            iterations=sweep.iterations,
            seed=rep_seed(sweep.master_seed, cell.index, rep),
            audit_interval=sweep.audit_interval,
        )
        try:
            summaries.append(run_scenario(config, audit_interval).summary)
        except (ValueError, AssertionError) as e:
            logger.warning(f"[SWEEP CELL] {tree_spec} c={cell.speedup} {cell.evolver} rep {rep} failed: {e}")

    row: dict[str, Any] = {
        "tree": tree_spec,
        "n": summaries[0]["n"] if summaries else cell.n,
        "c": cell.speedup,
        "evolver": cell.evolver,
        "reps": sweep.repetitions,
        "completed": len(summaries),
        "status": "ok" if len(summaries) == sweep.repetitions else ("partial" if summaries else "failed"),
    }
    if not summaries:
        return row

    n = row["n"]
    steady = _mean([s["steady_state_mean_D"] for s in summaries])
    final = _mean([s["final_D"] for s in summaries])
    load = _mean([s["steady_state_mean_load"] for s in summaries])
    # scripts that halt are measured where they stop
    measured = final if _halting_script(cell.evolver) else steady
    row.update({
        "steady_state_mean_D": steady,
        "D_over_n": None if measured is None else measured / n,
        "D_over_n2": None if measured is None else measured / (n * n),
        "final_D": final,
        "max_load": load,
        "max_load_over_sqrt_n": None if load is None else load / math.sqrt(n),
        "lemma_violations": sum(s["lemma_violations"] for s in summaries),
    })
    return row


def run_sweep(sweep: SweepSpec, jobs: int = 1, audit_interval: int = DEFAULT_AUDIT_INTERVAL) -> list[dict[str, Any]]:
    """Rows in cell order. jobs > 1 runs cells in worker processes."""
    cells = expand_cells(sweep)
    start = time.time()
    rows: dict[int, dict[str, Any]] = {}

    def _failed(cell: SweepCell) -> dict[str, Any]:
        return {
            "tree": sweep.tree_spec_for(cell.n, cell_tree_seed(sweep.master_seed, cell.index)),
            "n": cell.n,
            "c": cell.speedup,
            "evolver": cell.evolver,
            "reps": sweep.repetitions,
            "completed": 0,
            "status": "failed",
        }

    if jobs <= 1:
        for cell in cells:
            try:
                rows[cell.index] = run_cell(sweep, cell, audit_interval)
            except Exception as e:
                logger.warning(f"[SWEEP CELL] cell {cell.index} failed: {e}")
                rows[cell.index] = _failed(cell)
            logger.info(f"[SWEEP CELL] {cell.index + 1}/{len(cells)} n={cell.n} c={cell.speedup} {cell.evolver}")
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {executor.submit(run_cell, sweep, cell, audit_interval): cell for cell in cells}
            for future in concurrent.futures.as_completed(futures):
                cell = futures[future]
                try:
                    rows[cell.index] = future.result()
                except Exception as e:
                    logger.warning(f"[SWEEP CELL] cell {cell.index} failed: {e}")
                    rows[cell.index] = _failed(cell)
                    continue
                logger.info(f"[SWEEP CELL] done n={cell.n} c={cell.speedup} {cell.evolver}")

    logger.info(f"[SWEEP DONE] {len(cells)} cells in {time.time() - start:.1f}s")
    return [rows[i] for i in range(len(cells))]
