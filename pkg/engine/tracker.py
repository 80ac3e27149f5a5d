"""
The tracking loop, one oracle query per step: chase label i until the oracle
says it is home, then move on to label i+1, wrapping after label n-1.
"""
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum

from core.labeling import DistanceState, HypothesisLabeling, TrueLabeling, apply_hypothesis_move
from core.oracle import oracle_query
from core.tree import Tree


class InvariantViolation(AssertionError):
    """An exact runtime identity of the simulation failed."""


class StepOutcome(str, Enum):
    MOVED = "moved"
    FIXED = "fixed"


@dataclass
class TrackerState:
    n: int
    label: int = 0        # label currently being chased
    iteration: int = 0    # completed iterations
    moves: int = 0        # A_j so far
    steps: int = 0        # dt_j so far

    def start_iteration(self) -> None:
        self.moves = 0
        self.steps = 0


def algorithm_step(
    state: TrackerState,
    t: Tree,
    truth: TrueLabeling,
    hyp: HypothesisLabeling,
    distances: DistanceState,
) -> StepOutcome:
    label = state.label
    answer = oracle_query(t, truth, label, hyp.label_to_vertex[label])
    state.steps += 1
    if not answer.at_target:
        delta = apply_hypothesis_move(t, truth, hyp, label, answer.next_vertex, distances)
        if delta != -1:
            raise InvariantViolation(f"Oracle-directed move of label {label} changed D by {delta}")
        state.moves += 1
        return StepOutcome.MOVED

    state.label += 1
    if state.label == state.n:
        state.label = 0
        state.iteration += 1
    return StepOutcome.FIXED
