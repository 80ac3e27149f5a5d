from __future__ import annotations

import pytest
from pydantic import ValidationError

from schema.scenario import (
    ScenarioConfig,
    SweepSpec,
    TreeFamily,
    parse_evolver_spec,
    parse_spec,
    parse_tree_spec,
)


class TestSpecStrings:
    def test_parse(self):
        spec = parse_spec("wings:alpha=10,beta=4,tails=chain")
        assert spec.name == "wings"
        assert spec.get_int("alpha") == 10
        assert spec.get("tails") == "chain"
        assert str(spec) == "wings:alpha=10,beta=4,tails=chain"

    def test_bare_name(self):
        spec = parse_evolver_spec("uniform")
        assert spec.name == "uniform" and spec.params == {}

    @pytest.mark.parametrize("text", [
        "path", "path:m=5", "path:n=x", "star:n=5", "wings:alpha=3", "wings:alpha=3,beta=4,tails=loop", "path:n",
    ])
    def test_bad_tree_specs(self, text):
        with pytest.raises(ValueError):
            parse_tree_spec(text)

    @pytest.mark.parametrize("text", ["chaos", "greedy:sample=0", "script", "wings:policy=stop", "uniform:seed=3"])
    def test_bad_evolver_specs(self, text):
        with pytest.raises(ValueError):
            parse_evolver_spec(text)

    def test_good_specs(self):
        for text in ("path:n=8", "balanced:n=15,arity=3", "random:n=30,k=3", "file:path=t.txt", "wings:alpha=2,beta=3"):
            parse_tree_spec(text)
        for text in ("greedy:sample=8", "wings:policy=halt", "reversal", "script:path=s.txt,policy=hold", "idle"):
            parse_evolver_spec(text)


class TestScenarioConfig:
    def test_defaults(self):
        config = ScenarioConfig(tree="path:n=8")
        assert config.evolver == "uniform"
        assert config.parsed_speedup().p == 2
        assert config.iterations is None

    def test_speedup_is_normalised(self):
        assert ScenarioConfig(tree="path:n=8", speedup="6/4").speedup == "3/2"

    @pytest.mark.parametrize("fields", [
        {"tree": "path:n=8", "speedup": "1/3"},
        {"tree": "path:n=8", "iterations": 0},
        {"tree": "path:n=8", "evolver": "wings"},
        {"tree": "path:n=8", "init": "sideways"},
        {"tree": "tree"},
    ])
    def test_invalid(self, fields):
        with pytest.raises(ValidationError):
            ScenarioConfig(**fields)


class TestSweepSpec:
    def test_tree_specs(self):
        sweep = SweepSpec(family="wings", sizes=[200], wings_beta=4, evolvers=["wings:policy=halt"], speedups=["3/2"])
        assert sweep.tree_spec_for(200) == "wings:alpha=39,beta=4,tails=leaves"
        assert SweepSpec(sizes=[64]).tree_spec_for(64) == "path:n=64"
        assert SweepSpec(family="balanced", sizes=[7]).tree_spec_for(7) == "balanced:n=7,arity=2"
        assert SweepSpec(family=TreeFamily.RANDOM, sizes=[9]).tree_spec_for(9, 5) == "random:n=9,k=3,seed=5"

    def test_invalid(self):
        with pytest.raises(ValidationError):
            SweepSpec(sizes=[])
        with pytest.raises(ValidationError):
            SweepSpec(sizes=[1])
        with pytest.raises(ValidationError):
            SweepSpec(family="file", sizes=[8])
        with pytest.raises(ValidationError):
            SweepSpec(sizes=[8], evolvers=["wings"])
