from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import chisquare

from core.generators import gen_path, gen_random_bounded
from core.labeling import HypothesisLabeling, TrueLabeling, apply_true_swap, compute_distance
from evolver.evolvers import (
    ExhaustedPolicy,
    GreedyAdversaryEvolver,
    IdleEvolver,
    ScriptedEvolver,
    ScriptExhausted,
    UniformRandomEvolver,
    evolver_step,
    make_evolver,
    swap_gain,
)
from evolver.scripts import SwapScript


def _exact(n: int) -> tuple[TrueLabeling, HypothesisLabeling]:
    truth = TrueLabeling.identity(n)
    return truth, HypothesisLabeling.from_truth(truth)


class TestUniform:
    def test_frequencies_are_uniform(self):
        t = gen_path(11)
        truth, hyp = _exact(11)
        evolver = UniformRandomEvolver(seed=12345)
        counts = np.zeros(len(t.edges), dtype=int)
        for _ in range(20_000):
            counts[t.edge_index(*evolver_step(evolver, t, truth, hyp))] += 1
        assert counts.min() > 0
        assert chisquare(counts).pvalue > 0.001

    def test_deterministic_under_seed(self):
        t = gen_random_bounded(40, 3, seed=2)
        truth, hyp = _exact(40)
        a = UniformRandomEvolver(seed=9)
        b = UniformRandomEvolver(seed=9)
        assert [a.step(t, truth, hyp) for _ in range(500)] == [b.step(t, truth, hyp) for _ in range(500)]

    def test_does_not_touch_labelings(self, path8):
        truth, hyp = _exact(8)
        UniformRandomEvolver(seed=1).step(path8, truth, hyp)
        assert truth == TrueLabeling.identity(8)


class TestGreedy:
    def test_exact_start_picks_a_plus_two_edge(self, path8):
        truth, hyp = _exact(8)
        evolver = GreedyAdversaryEvolver(seed=0, sample_size=100)
        edge = evolver.step(path8, truth, hyp)
        assert edge == path8.edges[0]
        assert swap_gain(path8, truth, hyp, *edge) == 2

    def test_prefers_increasing_edges(self):
        t = gen_path(5)
        truth = TrueLabeling.identity(5)
        # labels 0 and 1 are hypothesized swapped; every other label is exact
        hyp = HypothesisLabeling([1, 0, 2, 3, 4])
        assert swap_gain(t, truth, hyp, 0, 1) == -2
        edge = GreedyAdversaryEvolver(seed=0, sample_size=10).step(t, truth, hyp)
        assert edge != (0, 1)
        assert swap_gain(t, truth, hyp, *edge) == 2

    def test_sampled_choice_is_the_first_sample_maximum(self):
        t = gen_random_bounded(60, 3, seed=4)
        truth = TrueLabeling(np.random.default_rng(0).permutation(60).tolist())
        hyp = HypothesisLabeling.from_truth(TrueLabeling.identity(60))
        state = compute_distance(t, truth, hyp)
        evolver = GreedyAdversaryEvolver(seed=5, sample_size=8)
        shadow = np.random.default_rng(5)
        for _ in range(50):
            picks = shadow.integers(0, len(t.edges), size=8).tolist()
            sample = [t.edges[i] for i in picks]
            gains = [swap_gain(t, truth, hyp, *e) for e in sample]
            edge = evolver.step(t, truth, hyp)
            assert edge == sample[gains.index(max(gains))]
            apply_true_swap(t, truth, hyp, edge, state)

    def test_rejects_empty_sample(self):
        with pytest.raises(ValueError):
            GreedyAdversaryEvolver(sample_size=0)


class TestScripted:
    def test_plays_then_holds(self, path4):
        truth, hyp = _exact(4)
        evolver = ScriptedEvolver(SwapScript(((0, 1), (1, 2))))
        assert evolver.step(path4, truth, hyp) == (0, 1)
        assert evolver.step(path4, truth, hyp) == (1, 2)
        assert evolver.exhausted
        assert evolver.step(path4, truth, hyp) is None

    def test_halt_policy_raises(self, path4):
        truth, hyp = _exact(4)
        evolver = ScriptedEvolver(SwapScript(((0, 1),)), ExhaustedPolicy.HALT)
        evolver.step(path4, truth, hyp)
        with pytest.raises(ScriptExhausted):
            evolver.step(path4, truth, hyp)

    def test_idle(self, path4):
        truth, hyp = _exact(4)
        assert IdleEvolver().step(path4, truth, hyp) is None


class TestMakeEvolver:
    def test_kinds(self, path8, tmp_path):
        assert isinstance(make_evolver("idle", path8), IdleEvolver)
        assert isinstance(make_evolver("uniform", path8, seed=1), UniformRandomEvolver)
        assert make_evolver("greedy", path8, sample_size=4).sample_size == 4
        reversal = make_evolver("reversal", path8, policy="halt")
        assert reversal.script.m == 28
        assert reversal.policy is ExhaustedPolicy.HALT

        script_file = tmp_path / "s.txt"
        script_file.write_text("2\n0 1\n1 2\n")
        scripted = make_evolver("script", path8, script_path=script_file)
        assert scripted.script.edges == ((0, 1), (1, 2))

    def test_script_must_fit_the_tree(self, path8, tmp_path):
        script_file = tmp_path / "s.txt"
        script_file.write_text("1\n0 5\n")
        with pytest.raises(ValueError):
            make_evolver("script", path8, script_path=script_file)

    def test_unknown_kind(self, path8):
        with pytest.raises(ValueError):
            make_evolver("chaos", path8)
