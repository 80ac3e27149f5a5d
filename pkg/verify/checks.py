"""
Self-checks run by `verify`: the fast ancestor-table answers against networkx
BFS, distance bookkeeping against recomputation, and the wings scripts against
exhaustive swap search.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from core.generators import TailLayout, gen_random_bounded
from core.labeling import (
    HypothesisLabeling,
    TrueLabeling,
    apply_hypothesis_move,
    apply_true_swap,
    compute_distance,
    placement_distance,
)
from core.oracle import oracle_query
from evolver.scripts import apply_script, make_wings_script
from verify.brute import DEFAULT_NODE_BUDGET, bfs_distance, bfs_first_edge, min_swaps_bfs, naive_total_distance

logger = logging.getLogger(__name__)

CHECK_SEED = 20240601


class CheckLevel(str, Enum):
    QUICK = "quick"
    FULL = "full"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class CheckFailed(Exception):
    pass


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


# ── Quick checks ───────────────────────────────────────────────────

def check_oracle_equivalence(rng: np.random.Generator) -> str:
    """Exhaustive (label, vertex) pairs for n <= 16; 20 random trees up to n = 64."""
    queries = 0
    for n in range(2, 17):
        t = gen_random_bounded(n, int(rng.integers(2, 5)), int(rng.integers(1 << 30)))
        truth = TrueLabeling(rng.permutation(n).tolist())
        for label in range(n):
            w = truth.label_to_vertex[label]
            for u in range(n):
                answer = oracle_query(t, truth, label, u)
                if u == w:
                    _require(answer.at_target, f"n={n}: label {label} at {u} not reported home")
                else:
                    _require(answer.edge == bfs_first_edge(t, u, w),
                             f"n={n}: oracle {answer.edge} vs BFS {bfs_first_edge(t, u, w)} for {u}->{w}")
                _require(t.distance(u, w) == bfs_distance(t, u, w), f"n={n}: distance {u}-{w} disagrees")
                queries += 1

    for _ in range(20):
        n = int(rng.integers(17, 65))
        t = gen_random_bounded(n, int(rng.integers(2, 6)), int(rng.integers(1 << 30)))
        truth = TrueLabeling(rng.permutation(n).tolist())
        for _ in range(4 * n):
            label, u = int(rng.integers(n)), int(rng.integers(n))
            w = truth.label_to_vertex[label]
            answer = oracle_query(t, truth, label, u)
            expected = None if u == w else bfs_first_edge(t, u, w)
            _require(answer.edge == expected, f"n={n}: oracle {answer.edge} vs BFS {expected}")
            queries += 1
    return f"{queries} queries agree"


def check_metric_axioms(rng: np.random.Generator) -> str:
    trials = 0
    for _ in range(30):
        n = int(rng.integers(2, 40))
        t = gen_random_bounded(n, 3, int(rng.integers(1 << 30)))
        a, b, c = (rng.integers(0, n, size=n).tolist() for _ in range(3))
        _require(placement_distance(t, a, a) == 0, "D(a, a) != 0")
        _require(placement_distance(t, a, b) == placement_distance(t, b, a), "D not symmetric")
        _require(
            placement_distance(t, a, c) <= placement_distance(t, a, b) + placement_distance(t, b, c),
            "triangle inequality fails",
        )
        _require((placement_distance(t, a, b) == 0) == (a == b), "D = 0 without equal placements")
        trials += 1
    return f"{trials} placement triples"


def check_incremental_audit(rng: np.random.Generator, steps: int = 10_000, audit_every: int = 250) -> str:
    """Random interleaving of true swaps and hypothesis moves, audited against BFS totals."""
    n = 48
    t = gen_random_bounded(n, 3, int(rng.integers(1 << 30)))
    truth = TrueLabeling(rng.permutation(n).tolist())
    hyp = HypothesisLabeling(rng.integers(0, n, size=n).tolist())
    state = compute_distance(t, truth, hyp)
    audits = 0
    for step in range(1, steps + 1):
        if rng.random() < 0.5:
            edge = t.edges[int(rng.integers(len(t.edges)))]
            delta = apply_true_swap(t, truth, hyp, edge, state)
            _require(delta in (-2, 0, 2), f"swap changed D by {delta}")
        else:
            label = int(rng.integers(n))
            here = hyp.label_to_vertex[label]
            nbrs = t.adjacency[here]
            delta = apply_hypothesis_move(t, truth, hyp, label, nbrs[int(rng.integers(len(nbrs)))], state)
            _require(delta in (-1, 1), f"move changed D by {delta}")
        if step % audit_every == 0:
            naive = naive_total_distance(t, truth, hyp)
            _require(naive == state.total, f"step {step}: incremental {state.total} vs naive {naive}")
            audits += 1
    return f"{steps} steps, {audits} audits"


# ── Full checks ────────────────────────────────────────────────────

def check_wings_scripts() -> str:
    checked = 0
    for tails in TailLayout:
        for beta in (2, 3, 4):
            for alpha in range(1, 5):
                ws = make_wings_script(alpha, beta, tails)
                ws.script.validate(ws.wings.tree)
                _require(apply_script(ws.start.copy(), ws.script) == ws.end,
                         f"{tails.value} ({alpha},{beta}) misses T1")
                _require(apply_script(ws.end.copy(), ws.script.reversed()) == ws.start,
                         f"{tails.value} ({alpha},{beta}) reverse does not restore T0")
                _require(2 * ws.m >= ws.distance, f"{tails.value} ({alpha},{beta}) shorter than D/2")
                if tails is TailLayout.LEAVES:
                    _require(ws.m <= ws.opt, f"leaves ({alpha},{beta}): m={ws.m} > opt={ws.opt}")
                checked += 1
    return f"{checked} scripts"


def check_min_swaps(node_budget: int = DEFAULT_NODE_BUDGET) -> str:
    parts = []
    for alpha, beta in ((1, 2), (2, 2)):
        ws = make_wings_script(alpha, beta)
        t = ws.wings.tree
        forward = min_swaps_bfs(t, ws.start.label_to_vertex, ws.end.label_to_vertex, node_budget)
        backward = min_swaps_bfs(t, ws.end.label_to_vertex, ws.start.label_to_vertex, node_budget)
        _require(forward.found and backward.found, f"wings({alpha},{beta}): search budget exceeded")
        _require(forward.swaps == backward.swaps, f"wings({alpha},{beta}): min not symmetric")
        _require(ws.distance <= 2 * forward.swaps <= 2 * ws.opt,
                 f"wings({alpha},{beta}): min={forward.swaps}, D={ws.distance}, opt={ws.opt}")
        _require(forward.swaps <= ws.m, f"wings({alpha},{beta}): script shorter than min")
        parts.append(f"wings({alpha},{beta}) min={forward.swaps} opt={ws.opt}")
    return "; ".join(parts)


def run_checks(level: CheckLevel | str = CheckLevel.QUICK, node_budget: int = DEFAULT_NODE_BUDGET) -> list[CheckResult]:
    level = CheckLevel(level)
    rng = np.random.default_rng(CHECK_SEED)
    checks: list[tuple[str, Callable[[], str]]] = [
        ("oracle_equivalence", lambda: check_oracle_equivalence(rng)),
        ("metric_axioms", lambda: check_metric_axioms(rng)),
        ("incremental_audit", lambda: check_incremental_audit(rng)),
    ]
    if level is CheckLevel.FULL:
        checks += [
            ("wings_scripts", check_wings_scripts),
            ("min_swaps", lambda: check_min_swaps(node_budget)),
        ]

    results = []
    for name, fn in checks:
        try:
            detail = fn()
            results.append(CheckResult(name, True, detail))
            logger.info(f"[VERIFY] {name}: ok ({detail})")
        except (CheckFailed, ValueError, AssertionError) as e:
            results.append(CheckResult(name, False, str(e)))
            logger.warning(f"[VERIFY] {name}: FAILED: {e}")
    return results
