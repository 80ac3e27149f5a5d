"""
Scenario runner: builds the tree, labelings and evolver a ScenarioConfig
describes, runs the simulation and assembles the run summary.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from cli.cache import memoize
from core.fileio import read_hypothesis, read_tree, read_true_labeling
from core.generators import TailLayout, WingsTree, gen_balanced, gen_path, gen_random_bounded, gen_wings
from core.labeling import HypothesisLabeling, InitialHypothesis, TrueLabeling, make_hypothesis
from core.tree import Tree
from engine.lemmas import check_lemma_bounds, steady_state_mean
from engine.simulation import DEFAULT_AUDIT_INTERVAL, SimulationResult, run_simulation
from engine.speedup import Speedup
from evolver.evolvers import DEFAULT_SAMPLE_SIZE, ExhaustedPolicy, make_evolver
from evolver.scripts import WingsScript, make_wings_script
from schema.scenario import EvolverName, ScenarioConfig, TreeFamily, parse_tree_spec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuiltTree:
    tree: Tree
    wings: Optional[WingsTree] = None


@memoize()
def build_tree_from_spec(text: str, default_seed: int = 0) -> BuiltTree:
    """Tree for a spec string; random trees use the spec's seed, else `default_seed`."""
    spec = parse_tree_spec(text)
    family = TreeFamily(spec.name)
    if family is TreeFamily.PATH:
        return BuiltTree(gen_path(spec.get_int("n")))
    if family is TreeFamily.BALANCED:
        return BuiltTree(gen_balanced(spec.get_int("n"), spec.get_int("arity", 2)))
    if family is TreeFamily.RANDOM:
        seed = spec.get_int("seed", default_seed)
        return BuiltTree(gen_random_bounded(spec.get_int("n"), spec.get_int("k", 3), seed))
    if family is TreeFamily.WINGS:
        wings = gen_wings(spec.get_int("alpha"), spec.get_int("beta"), spec.get("tails", TailLayout.LEAVES.value))
        return BuiltTree(wings.tree, wings)
    return BuiltTree(read_tree(spec.get("path")))


@memoize()
def _wings_script(alpha: int, beta: int, tails: str) -> WingsScript:
    return make_wings_script(alpha, beta, tails)


def _start_truth(config: ScenarioConfig, t: Tree) -> TrueLabeling:
    if not config.truth_file:
        return TrueLabeling.identity(t.n)
    truth = read_true_labeling(config.truth_file)
    if truth.n != t.n:
        raise ValueError(f"{config.truth_file}: {truth.n} labels for a tree with {t.n} vertices")
    return truth


def _start_hypothesis(
    config: ScenarioConfig, t: Tree, truth: TrueLabeling, rng: np.random.Generator
) -> HypothesisLabeling:
    if not config.hypothesis_file:
        return make_hypothesis(config.init, t, truth, rng)
    hyp = read_hypothesis(config.hypothesis_file, t.n)
    if len(hyp.label_to_vertex) != t.n:
        raise ValueError(f"{config.hypothesis_file}: {len(hyp.label_to_vertex)} labels, expected {t.n}")
    return hyp


@dataclass
class ScenarioOutcome:
    config: ScenarioConfig
    tree: Tree
    result: SimulationResult
    summary: dict[str, Any]


def run_scenario(config: ScenarioConfig, audit_interval: int = DEFAULT_AUDIT_INTERVAL) -> ScenarioOutcome:
    built = build_tree_from_spec(config.tree, config.seed)
    t = built.tree
    speedup = config.parsed_speedup()
    evo_spec = config.evolver_spec()
    policy = evo_spec.get("policy", ExhaustedPolicy.HOLD.value)

    hyp_seed, evolver_seed = np.random.SeedSequence(config.seed).spawn(2)
    truth = _start_truth(config, t)
    hyp = _start_hypothesis(config, t, truth, np.random.default_rng(hyp_seed))

    wings_script: Optional[WingsScript] = None
    script = None
    if evo_spec.name == EvolverName.WINGS.value:
        w = built.wings
        wings_script = _wings_script(w.alpha, w.beta, w.tails.value)
        script = wings_script.script
    evolver = make_evolver(
        evo_spec.name,
        t,
        seed=evolver_seed,
        sample_size=evo_spec.get_int("sample", DEFAULT_SAMPLE_SIZE),
        script=script,
        script_path=evo_spec.get("path") or None,
        policy=policy,
    )

    result = run_simulation(
        t,
        evolver,
        speedup,
        hyp,
        truth,
        iterations=config.iterations,
        audit_interval=config.audit_interval or audit_interval,
    )
    summary = build_summary(config, t, speedup, result, wings_script)
    return ScenarioOutcome(config=config, tree=t, result=result, summary=summary)


def wings_lower_bound(distance_t1_t0: int, m: int, speedup: Speedup) -> int:
    """D(T1,T0) - c*m - 2, rounded up: the least D(H, T1) at script end from an exact start."""
    return distance_t1_t0 - (m * speedup.p) // speedup.q - 2


def build_summary(
    config: ScenarioConfig,
    t: Tree,
    speedup: Speedup,
    result: SimulationResult,
    wings_script: Optional[WingsScript] = None,
) -> dict[str, Any]:
    records = result.records
    report = check_lemma_bounds(records, speedup, t.n)
    summary: dict[str, Any] = {
        "config": config.model_dump(mode="json"),
        "n": t.n,
        "iterations": len(records),
        "steady_state_mean_D": steady_state_mean(records),
        "steady_state_mean_load": steady_state_mean(records, attr="max_load"),
        "initial_D": result.initial_distance,
        "final_D": result.final_distance,
        "peak_D": result.peak_distance,
        "lemma_violations": report.violations,
        "max_load_over_run": result.peak_load,
        "algorithm_steps": result.algorithm_steps,
        "evolver_steps": result.evolver_steps,
        "end_time": str(result.end_time),
        "audits": result.audits,
        "evolver": result.evolver,
    }
    if "script_length" in result.evolver:
        summary["script_length"] = result.evolver["script_length"]
        summary["script_exhausted"] = result.script_exhausted
    if wings_script is not None:
        summary["opt_target"] = wings_script.opt
        summary["D_T1_T0"] = wings_script.distance
        summary["D_over_n2"] = result.final_distance / (t.n * t.n)
        at_script_end = result.script_exhausted and result.end_time == speedup.evolver_time(wings_script.m)
        if at_script_end and config.init is InitialHypothesis.EXACT and not config.hypothesis_file:
            bound = wings_lower_bound(wings_script.distance, wings_script.m, speedup)
            summary["lower_bound"] = bound
            summary["lower_bound_holds"] = result.final_distance >= bound
    return summary
