"""
Simulation engine: interleaves the evolver and the tracker on one clock.

The algorithm acts at integer times 1, 2, 3, ...; the k-th evolver action
happens at time k*p/q. When both fall on the same instant the evolver goes
first. All schedule comparisons are integer cross-multiplications.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from core.labeling import (
    HypothesisLabeling,
    TrueLabeling,
    apply_true_swap,
    compute_distance,
    max_vertex_load,
)
from core.tree import Tree
from engine.lemmas import default_iteration_budget
from engine.speedup import Speedup
from engine.tracker import InvariantViolation, StepOutcome, TrackerState, algorithm_step
from evolver.evolvers import Evolver, ExhaustedPolicy, ScriptedEvolver, ScriptExhausted

logger = logging.getLogger(__name__)

DEFAULT_AUDIT_INTERVAL = 10

RECORD_FIELDS = ("j", "D_j", "A_j", "dt_j", "evolver_steps", "max_load", "step_index")


@dataclass(frozen=True)
class IterationRecord:
    j: int
    D_j: int             # D at the start of the iteration
    A_j: int             # algorithm moves
    dt_j: int            # algorithm steps
    evolver_steps: int   # swaps the evolver made during the iteration
    max_load: int        # largest hypothesis occupancy at the iteration's end
    step_index: int      # algorithm steps since the run began, at the iteration's end
    peak_D: int = 0      # largest D seen during the iteration; not part of the CSV

    def as_row(self) -> list[int]:
        return [getattr(self, name) for name in RECORD_FIELDS]


@dataclass
class SimulationResult:
    records: list[IterationRecord]
    initial_distance: int
    final_distance: int
    truth: TrueLabeling
    hyp: HypothesisLabeling
    algorithm_steps: int
    evolver_steps: int
    end_time: Fraction
    peak_load: int
    peak_distance: int
    script_exhausted: bool = False
    audits: int = 0
    evolver: dict = field(default_factory=dict)


def _halt_time(evolver: Evolver, speedup: Speedup) -> Fraction | None:
    if isinstance(evolver, ScriptedEvolver) and evolver.policy is ExhaustedPolicy.HALT:
        return speedup.evolver_time(evolver.script.m - evolver.position)
    return None


def run_simulation(
    tree: Tree,
    evolver: Evolver,
    speedup: Speedup,
    hypothesis: HypothesisLabeling,
    truth: TrueLabeling,
    iterations: int | None = None,
    time_limit: Fraction | int | None = None,
    audit_interval: int = DEFAULT_AUDIT_INTERVAL,
) -> SimulationResult:
    """Run until `iterations` iterations complete or the next event would pass `time_limit`.

    Works on copies of `hypothesis` and `truth`. A scripted evolver under the
    halt policy caps the run at the time of its last swap. With neither an
    iteration budget nor a time limit the default budget for n applies.
    """
    n = tree.n
    if iterations is not None and iterations < 1:
        raise ValueError(f"Iteration budget must be >= 1, got {iterations}")
    if audit_interval < 1:
        raise ValueError(f"audit_interval must be >= 1, got {audit_interval}")

    truth = truth.copy()
    hyp = hypothesis.copy()
    if truth.n != n:
        raise ValueError(f"Truth covers {truth.n} labels, tree has {n} vertices")

    halt_at = _halt_time(evolver, speedup)
    if halt_at is not None:
        time_limit = halt_at if time_limit is None else min(Fraction(time_limit), halt_at)
    if iterations is None and time_limit is None:
        iterations = default_iteration_budget(n)
    limit = None if time_limit is None else Fraction(time_limit)

    distances = compute_distance(tree, truth, hyp)
    ledger = distances.total
    initial = distances.total
    state = TrackerState(n=n)
    p, q = speedup.p, speedup.q
    audit_every = audit_interval * n

    logger.info(
        f"[SIM START] n={n} c={speedup} evolver={evolver.kind} D0={initial} "
        f"iterations={iterations} time_limit={limit}"
    )

    records: list[IterationRecord] = []
    a = 0                 # algorithm steps taken
    k = 0                 # evolver actions taken (no-ops included)
    swaps = 0
    audits = 0
    exhausted = False
    end_time = Fraction(0)
    peak_load = max_vertex_load(hyp)
    peak_distance = initial

    d_start = distances.total
    iter_peak = d_start
    iter_swaps = 0

    def audit() -> None:
        nonlocal audits
        fresh = compute_distance(tree, truth, hyp).total
        audits += 1
        if fresh != distances.total or fresh != ledger:
            raise InvariantViolation(
                f"Distance audit at step {a}: recomputed {fresh}, incremental {distances.total}, ledger {ledger}"
            )
        logger.debug(f"[AUDIT] step={a} D={fresh}")

    while iterations is None or len(records) < iterations:
        # next algorithm step at a+1, next evolver action at (k+1)p/q
        evolver_next = (k + 1) * p <= (a + 1) * q
        if limit is not None:
            if evolver_next and Fraction((k + 1) * p, q) > limit:
                break
            if not evolver_next and a + 1 > limit:
                break

        if evolver_next:
            try:
                edge = evolver.step(tree, truth, hyp)
            except ScriptExhausted:
                exhausted = True
                break
            k += 1
            end_time = Fraction(k * p, q)
            if edge is not None:
                delta = apply_true_swap(tree, truth, hyp, edge, distances)
                if delta not in (-2, 0, 2):
                    raise InvariantViolation(f"Evolver swap {edge} changed D by {delta}")
                ledger += delta
                swaps += 1
                iter_swaps += 1
                if distances.total > iter_peak:
                    iter_peak = distances.total
            continue

        before = state.iteration
        outcome = algorithm_step(state, tree, truth, hyp, distances)
        a += 1
        end_time = Fraction(a)
        if outcome is StepOutcome.MOVED:
            ledger -= 1

        if a % audit_every == 0:
            audit()

        if state.iteration != before:
            if state.steps != n + state.moves:
                raise InvariantViolation(
                    f"Iteration {state.iteration}: dt={state.steps} but n + A = {n + state.moves}"
                )
            load = max_vertex_load(hyp)
            peak_load = max(peak_load, load)
            peak_distance = max(peak_distance, iter_peak)
            records.append(IterationRecord(
                j=state.iteration,
                D_j=d_start,
                A_j=state.moves,
                dt_j=state.steps,
                evolver_steps=iter_swaps,
                max_load=load,
                step_index=a,
                peak_D=iter_peak,
            ))
            state.start_iteration()
            d_start = distances.total
            iter_peak = d_start
            iter_swaps = 0

    audit()
    if isinstance(evolver, ScriptedEvolver) and evolver.exhausted:
        exhausted = True
    peak_distance = max(peak_distance, iter_peak)
    peak_load = max(peak_load, max_vertex_load(hyp))

    logger.info(
        f"[SIM DONE] iterations={len(records)} algorithm_steps={a} evolver_swaps={swaps} "
        f"final_D={distances.total} end_time={end_time}"
    )
    return SimulationResult(
        records=records,
        initial_distance=initial,
        final_distance=distances.total,
        truth=truth,
        hyp=hyp,
        algorithm_steps=a,
        evolver_steps=swaps,
        end_time=end_time,
        peak_load=peak_load,
        peak_distance=peak_distance,
        script_exhausted=exhausted,
        audits=audits,
        evolver=evolver.describe(),
    )
