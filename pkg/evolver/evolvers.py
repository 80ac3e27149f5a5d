"""
Evolvers: the background process that swaps true labels on adjacent vertices.
"""
from __future__ import annotations
import logging
from abc import ABC, abstractmethod
from enum import Enum
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from core.fileio import read_script_edges
from core.labeling import HypothesisLabeling, TrueLabeling
from core.tree import Tree
from evolver.scripts import SwapScript, make_reversal_script

logger = logging.getLogger(__name__)

Edge = tuple[int, int]

DEFAULT_SAMPLE_SIZE = 32
_BATCH = 4096


class ScriptExhausted(Exception):
    """A scripted evolver under the halt policy has played its last swap."""


class ExhaustedPolicy(str, Enum):
    HOLD = "hold"   # keep going as a no-op
    HALT = "halt"   # raise ScriptExhausted


def _as_rng(seed: int | np.random.Generator | np.random.SeedSequence) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class Evolver(ABC):
    kind: str = ""

    @abstractmethod
    def step(self, t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> Edge | None:
        """Edge to swap next, or None for a no-op. Must not modify truth or hyp."""

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind}


class IdleEvolver(Evolver):
    kind = "idle"

    def step(self, t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> Edge | None:
        return None


class UniformRandomEvolver(Evolver):
    """Each tree edge with probability 1/(n-1), independently per step."""

    kind = "uniform"

    def __init__(self, seed: int | np.random.Generator | np.random.SeedSequence = 0):
        self._rng = _as_rng(seed)
        self._buffer: list[int] = []
        self._pos = 0
        self._n_edges = 0

    def step(self, t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> Edge | None:
        n_edges = len(t.edges)
        if n_edges == 0:
            return None
        if self._pos >= len(self._buffer) or n_edges != self._n_edges:
            self._buffer = self._rng.integers(0, n_edges, size=_BATCH).tolist()
            self._pos = 0
            self._n_edges = n_edges
        idx = self._buffer[self._pos]
        self._pos += 1
        return t.edges[idx]


def swap_gain(t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling, u: int, v: int) -> int:
    """Change in D if the true labels on (u, v) were swapped."""
    a = truth.vertex_to_label[u]
    b = truth.vertex_to_label[v]
    ha = hyp.label_to_vertex[a]
    hb = hyp.label_to_vertex[b]
    return (t.distance(v, ha) - t.distance(u, ha)) + (t.distance(u, hb) - t.distance(v, hb))


class GreedyAdversaryEvolver(Evolver):
    """Samples edges and swaps the one that grows D the most.

    min(sample_size, n-1) edges are drawn with replacement; when the sample
    would cover the tree every edge is scanned instead. Ties go to the first
    maximum in sample order.
    """

    kind = "greedy"

    def __init__(
        self,
        seed: int | np.random.Generator | np.random.SeedSequence = 0,
        sample_size: int = DEFAULT_SAMPLE_SIZE,
    ):
        if sample_size < 1:
            raise ValueError(f"sample_size must be >= 1, got {sample_size}")
        self._rng = _as_rng(seed)
        self.sample_size = sample_size

    def step(self, t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> Edge | None:
        n_edges = len(t.edges)
        if n_edges == 0:
            return None
        if self.sample_size >= n_edges:
            candidates: Sequence[Edge] = t.edges
        else:
            picks = self._rng.integers(0, n_edges, size=self.sample_size).tolist()
            candidates = [t.edges[i] for i in picks]

        best = candidates[0]
        best_gain = swap_gain(t, truth, hyp, *best)
        for edge in candidates[1:]:
            gain = swap_gain(t, truth, hyp, *edge)
            if gain > best_gain:
                best, best_gain = edge, gain
        return best

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, "sample_size": self.sample_size}


class ScriptedEvolver(Evolver):
    """Plays a fixed swap script, then holds or halts."""

    kind = "script"

    def __init__(
        self,
        script: SwapScript,
        policy: ExhaustedPolicy | str = ExhaustedPolicy.HOLD,
        name: str = "script",
    ):
        self.script = script
        self.policy = ExhaustedPolicy(policy)
        self.kind = name
        self.position = 0

    @property
    def exhausted(self) -> bool:
        return self.position >= self.script.m

    def step(self, t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> Edge | None:
        if self.exhausted:
            if self.policy is ExhaustedPolicy.HALT:
                raise ScriptExhausted(f"Script of {self.script.m} swaps finished")
            return None
        edge = self.script.edges[self.position]
        self.position += 1
        return edge

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, "script_length": self.script.m, "policy": self.policy.value}


def evolver_step(
    evolver: Evolver,
    t: Tree,
    truth: TrueLabeling,
    hyp: HypothesisLabeling,
) -> Edge | None:
    """One evolver decision. The caller applies the swap."""
    return evolver.step(t, truth, hyp)


def make_evolver(
    kind: str,
    t: Tree,
    seed: int | np.random.Generator | np.random.SeedSequence = 0,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    script: SwapScript | None = None,
    script_path: str | Path | None = None,
    policy: ExhaustedPolicy | str = ExhaustedPolicy.HOLD,
) -> Evolver:
    """Build an evolver by kind: idle, uniform, greedy, reversal, script.

    Wings scripts need the tree's (alpha, beta, tails) and are built by the
    scenario runner, which passes them in as `script`.
    """
    if kind == "idle":
        return IdleEvolver()
    if kind == "uniform":
        return UniformRandomEvolver(seed)
    if kind == "greedy":
        return GreedyAdversaryEvolver(seed, sample_size)
    if kind == "reversal":
        return ScriptedEvolver(make_reversal_script(t), policy, name="reversal")
    if kind in ("script", "wings"):
        if script is None:
            if script_path is None:
                raise ValueError(f"Evolver '{kind}' needs a script or a script path")
            script = SwapScript(tuple(read_script_edges(script_path)))
        script.validate(t)
        return ScriptedEvolver(script, policy, name=kind)
    raise ValueError(f"Unknown evolver kind: {kind!r}")
