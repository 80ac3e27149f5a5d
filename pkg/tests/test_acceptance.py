"""End-to-end behaviour at sizes large enough to see the growth rates; run with -m slow."""
from __future__ import annotations

import math

import numpy as np
import pytest

from cli.services.scenario_runner import run_scenario
from cli.services.sweep_service import run_sweep
from core.generators import gen_random_bounded
from core.labeling import TrueLabeling, make_hypothesis
from engine.lemmas import check_lemma_bounds
from engine.simulation import run_simulation
from engine.speedup import Speedup
from evolver.evolvers import GreedyAdversaryEvolver, UniformRandomEvolver
from output.excel_report import GROWTH_TOLERANCE
from schema.scenario import ScenarioConfig, SweepSpec
from verify.checks import check_incremental_audit

pytestmark = pytest.mark.slow

SIZES = {
    # a path at n=4096 costs minutes per repetition; the balanced family covers that size
    "path": [64, 256, 1024],
    "balanced": [64, 256, 1024, 4096],
}
REPETITIONS = 5


def _budget(n: int) -> int:
    return 4 * math.ceil(math.log2(n))


def _rows_by_n(family: str, evolver: str, c: str) -> dict[int, dict]:
    rows = {}
    for n in SIZES[family]:
        sweep = SweepSpec(family=family, sizes=[n], speedups=[c], evolvers=[evolver],
                          repetitions=REPETITIONS, init="reversed", iterations=_budget(n), master_seed=7)
        (row,) = run_sweep(sweep)
        rows[n] = row
    return rows


@pytest.mark.parametrize("family", ["path", "balanced"])
@pytest.mark.parametrize("evolver,c", [("uniform", "2/1"), ("greedy", "5/2")])
def test_distance_stays_linear_and_load_sublinear(family, evolver, c):
    rows = _rows_by_n(family, evolver, c)
    assert all(r["status"] == "ok" and r["lemma_violations"] == 0 for r in rows.values())
    small = rows[SIZES[family][0]]
    for n, row in rows.items():
        assert row["D_over_n"] <= GROWTH_TOLERANCE * small["D_over_n"], n
        assert row["max_load_over_sqrt_n"] <= GROWTH_TOLERANCE * small["max_load_over_sqrt_n"], n
    if evolver == "uniform":
        # the evolver keeps the tracker busy: D stays a constant fraction of n
        assert all(r["D_over_n"] >= 0.01 for r in rows.values())


def test_lemma_bounds_over_many_runs():
    runs = 0
    for c in ("2/1", "5/2", "3/1"):
        speedup = Speedup.parse(c)
        for evolver_cls in (UniformRandomEvolver, GreedyAdversaryEvolver):
            for n in (64, 256):
                for rep in range(9):
                    seed = int(np.random.SeedSequence([n, rep, runs]).generate_state(1)[0])
                    t = gen_random_bounded(n, 3, seed=seed)
                    truth = TrueLabeling.identity(n)
                    hyp = make_hypothesis("random", t, truth, seed=seed + 1)
                    result = run_simulation(t, evolver_cls(seed=seed + 2), speedup, hyp, truth, iterations=12)
                    report = check_lemma_bounds(result.records, speedup, n)
                    assert report.ok, (c, evolver_cls.__name__, n, rep, report)
                    runs += 1
    assert runs >= 100


@pytest.mark.parametrize("alpha", [60, 100])
def test_wings_adversary_forces_quadratic_distance(alpha):
    speedup = Speedup(3, 2)
    config = ScenarioConfig(tree=f"wings:alpha={alpha},beta=4", evolver="wings:policy=halt",
                            speedup=str(speedup), init="exact")
    summary = run_scenario(config).summary
    assert summary["script_exhausted"]
    assert summary["script_length"] <= summary["opt_target"]
    assert summary["lower_bound"] > 0
    assert summary["lower_bound_holds"]
    assert summary["lemma_violations"] == 0


def test_wings_ratio_holds_across_sizes():
    sweep = SweepSpec(family="wings", sizes=[200, 800, 3200], speedups=["3/2"], evolvers=["wings:policy=halt"],
                      repetitions=1, init="exact", wings_beta=4)
    rows = run_sweep(sweep)
    ratios = [r["D_over_n2"] for r in rows]
    assert all(r["status"] == "ok" for r in rows)
    assert min(ratios) >= 0.5 * ratios[0]


def test_long_incremental_audit():
    rng = np.random.default_rng(3)
    detail = check_incremental_audit(rng, steps=10_000, audit_every=500)
    assert detail.startswith("10000 steps")
