from __future__ import annotations

import pytest

from core.fileio import read_script_edges, write_script
from core.generators import TailLayout, gen_balanced, gen_path
from core.labeling import InvalidMoveError, TrueLabeling, placement_distance
from core.tree import InvalidTreeError, build_tree
from evolver.scripts import (
    SwapScript,
    apply_script,
    make_reversal_script,
    make_wings_script,
    opt_wings,
    path_order,
    wings_target,
)
from verify.brute import min_swaps_bfs


class TestOptFormula:
    @pytest.mark.parametrize("alpha,beta,expected", [(2, 3, 28), (1, 2, 9), (4, 4, 5 * 18)])
    def test_values(self, alpha, beta, expected):
        assert opt_wings(alpha, beta) == expected


class TestReversal:
    def test_length_and_result(self):
        t = gen_path(6)
        script = make_reversal_script(t)
        assert script.m == 15
        truth = apply_script(TrueLabeling.identity(6), script)
        assert truth.label_to_vertex == [5, 4, 3, 2, 1, 0]

    def test_unordered_path_ids(self):
        t = build_tree([(2, 0), (0, 3), (3, 1)])
        assert path_order(t) == [1, 3, 0, 2]
        script = make_reversal_script(t)
        script.validate(t)
        assert apply_script(TrueLabeling(script.start), script).label_to_vertex == list(script.end)

    def test_rejects_non_path(self):
        with pytest.raises(InvalidTreeError):
            make_reversal_script(gen_balanced(7, 2))

    def test_reverse_restores_start(self):
        t = gen_path(9)
        script = make_reversal_script(t)
        truth = apply_script(TrueLabeling.identity(9), script)
        apply_script(truth, script.reversed())
        assert truth == TrueLabeling.identity(9)


class TestWingsScript:
    @pytest.mark.parametrize("tails", list(TailLayout))
    @pytest.mark.parametrize("beta", [2, 3, 4])
    @pytest.mark.parametrize("alpha", [1, 2, 3, 4])
    def test_reaches_target(self, alpha, beta, tails):
        ws = make_wings_script(alpha, beta, tails)
        ws.script.validate(ws.wings.tree)
        assert apply_script(ws.start.copy(), ws.script) == ws.end
        assert ws.distance == beta * alpha * (alpha + 1)
        assert 2 * ws.m >= ws.distance
        assert apply_script(ws.end.copy(), ws.script.reversed()) == ws.start

    @pytest.mark.parametrize("beta", [2, 3, 4, 5])
    @pytest.mark.parametrize("alpha", [1, 2, 3, 4, 7, 12])
    def test_leaves_within_opt(self, alpha, beta):
        ws = make_wings_script(alpha, beta, TailLayout.LEAVES)
        assert ws.m <= ws.opt

    @pytest.mark.parametrize("alpha,beta", [(1, 2), (2, 3), (4, 4), (6, 3)])
    def test_chain_length(self, alpha, beta):
        ws = make_wings_script(alpha, beta, TailLayout.CHAIN)
        assert ws.m == beta * alpha * alpha + alpha

    def test_target_keeps_center_and_tails(self, wings23):
        t1 = wings_target(wings23)
        assert t1.vertex_of(0) == 0
        for j in range(wings23.alpha):
            v = wings23.tail_vertex(j)
            assert t1.vertex_of(v) == v
        assert t1.vertex_of(wings23.wing_vertex(2, 1)) == wings23.wing_vertex(0, 1)

    def test_small_scripts_bracket_the_optimum(self):
        for alpha, beta in ((1, 2), (2, 2)):
            ws = make_wings_script(alpha, beta)
            result = min_swaps_bfs(ws.wings.tree, ws.start.label_to_vertex, ws.end.label_to_vertex)
            assert result.found
            assert ws.distance <= 2 * result.swaps
            assert result.swaps <= ws.m <= ws.opt


class TestSwapScript:
    def test_validate_rejects_non_edges(self, path4):
        with pytest.raises(InvalidMoveError):
            SwapScript(((0, 1), (0, 2))).validate(path4)

    def test_validate_checks_declared_end(self, path4):
        script = SwapScript(((0, 1),), start=(0, 1, 2, 3), end=(0, 1, 2, 3))
        with pytest.raises(ValueError):
            script.validate(path4)

    def test_file_round_trip(self, tmp_path):
        ws = make_wings_script(2, 3)
        path = write_script(ws.script.edges, tmp_path / "wings.txt")
        assert path.read_text().splitlines()[0] == str(ws.m)
        assert read_script_edges(path) == list(ws.script.edges)

    def test_declared_length_is_checked(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\n0 1\n1 2\n")
        with pytest.raises(ValueError):
            read_script_edges(path)

    def test_lower_bound_on_length(self):
        t = gen_path(7)
        script = make_reversal_script(t)
        d = placement_distance(t, script.end, script.start)
        assert 2 * script.m >= d
