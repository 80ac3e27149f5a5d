"""
Scenario and sweep documents, and the compact `name:key=value,...` spec strings
used for trees and evolvers.

    tree:     path:n=64 | balanced:n=63,arity=2 | random:n=100,k=3
              wings:alpha=10,beta=4[,tails=leaves|chain] | file:path=tree.txt
    evolver:  uniform | greedy[:sample=32] | wings[:policy=halt|hold]
              reversal[:policy=..] | script:path=s.txt[,policy=..] | idle
"""
from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from core.generators import TailLayout
from core.labeling import InitialHypothesis
from engine.speedup import Speedup
from evolver.evolvers import DEFAULT_SAMPLE_SIZE, ExhaustedPolicy


@dataclass(frozen=True)
class ParsedSpec:
    name: str
    params: dict[str, str] = field(default_factory=dict)

    def get_int(self, key: str, default: Optional[int] = None) -> int:
        if key not in self.params:
            if default is None:
                raise ValueError(f"'{self.name}' needs '{key}'")
            return default
        try:
            return int(self.params[key])
        except ValueError:
            raise ValueError(f"'{self.name}': {key}={self.params[key]!r} is not an integer") from None

    def get(self, key: str, default: str = "") -> str:
        return self.params.get(key, default)

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}:" + ",".join(f"{k}={v}" for k, v in self.params.items())


def parse_spec(text: str) -> ParsedSpec:
    text = text.strip()
    if not text:
        raise ValueError("Empty spec string")
    name, _, rest = text.partition(":")
    params: dict[str, str] = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not key.strip():
                raise ValueError(f"Malformed parameter {item!r} in {text!r}")
            params[key.strip()] = value.strip()
    return ParsedSpec(name.strip().lower(), params)


# ── Trees ──────────────────────────────────────────────────────────

class TreeFamily(str, Enum):
    PATH = "path"
    BALANCED = "balanced"
    RANDOM = "random"
    WINGS = "wings"
    FILE = "file"


_TREE_KEYS: dict[TreeFamily, tuple[set[str], set[str]]] = {
    # family: (required, optional)
    TreeFamily.PATH: ({"n"}, set()),
    TreeFamily.BALANCED: ({"n"}, {"arity"}),
    TreeFamily.RANDOM: ({"n"}, {"k", "seed"}),
    TreeFamily.WINGS: ({"alpha", "beta"}, {"tails"}),
    TreeFamily.FILE: ({"path"}, set()),
}


def parse_tree_spec(text: str) -> ParsedSpec:
    spec = parse_spec(text)
    try:
        family = TreeFamily(spec.name)
    except ValueError:
        raise ValueError(f"Unknown tree family {spec.name!r}") from None
    required, optional = _TREE_KEYS[family]
    missing = required - spec.params.keys()
    unknown = spec.params.keys() - required - optional
    if missing:
        raise ValueError(f"Tree spec {text!r} is missing {sorted(missing)}")
    if unknown:
        raise ValueError(f"Tree spec {text!r} has unknown keys {sorted(unknown)}")
    for key in required | optional:
        if key in spec.params and key not in ("path", "tails"):
            spec.get_int(key)
    if family is TreeFamily.WINGS:
        TailLayout(spec.get("tails", TailLayout.LEAVES.value))
    return spec


# ── Evolvers ───────────────────────────────────────────────────────

class EvolverName(str, Enum):
    UNIFORM = "uniform"
    GREEDY = "greedy"
    WINGS = "wings"
    REVERSAL = "reversal"
    SCRIPT = "script"
    IDLE = "idle"


_SCRIPTED = {EvolverName.WINGS, EvolverName.REVERSAL, EvolverName.SCRIPT}


def parse_evolver_spec(text: str) -> ParsedSpec:
    spec = parse_spec(text)
    try:
        name = EvolverName(spec.name)
    except ValueError:
        raise ValueError(f"Unknown evolver {spec.name!r}") from None
    allowed: set[str] = set()
    if name is EvolverName.GREEDY:
        allowed = {"sample"}
        if spec.get_int("sample", DEFAULT_SAMPLE_SIZE) < 1:
            raise ValueError("greedy sample must be >= 1")
    elif name in _SCRIPTED:
        allowed = {"policy"} | ({"path"} if name is EvolverName.SCRIPT else set())
        ExhaustedPolicy(spec.get("policy", ExhaustedPolicy.HOLD.value))
        if name is EvolverName.SCRIPT and "path" not in spec.params:
            raise ValueError("script evolver needs path=..")
    unknown = spec.params.keys() - allowed
    if unknown:
        raise ValueError(f"Evolver spec {text!r} has unknown keys {sorted(unknown)}")
    return spec


def _check_speedup(value: str) -> str:
    return str(Speedup.parse(value))


# ── Documents ──────────────────────────────────────────────────────

class ScenarioConfig(BaseModel):
    tree: str
    evolver: str = "uniform"
    speedup: str = "2/1"
    init: InitialHypothesis = InitialHypothesis.EXACT
    iterations: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    truth_file: Optional[str] = None        # start truth; identity when unset
    hypothesis_file: Optional[str] = None   # start hypothesis; overrides init
    out_csv: Optional[str] = None
    out_json: Optional[str] = None
    audit_interval: Optional[int] = Field(default=None, ge=1)

    @field_validator("tree")
    @classmethod
    def _tree(cls, v: str) -> str:
        return str(parse_tree_spec(v))

    @field_validator("evolver")
    @classmethod
    def _evolver(cls, v: str) -> str:
        return str(parse_evolver_spec(v))

    @field_validator("speedup")
    @classmethod
    def _speedup(cls, v: str) -> str:
        return _check_speedup(v)

    @model_validator(mode="after")
    def _wings_evolver_needs_wings_tree(self) -> "ScenarioConfig":
        if self.evolver_spec().name == EvolverName.WINGS.value and self.tree_spec().name != TreeFamily.WINGS.value:
            raise ValueError("The wings evolver runs on a wings tree")
        if self.evolver_spec().name == EvolverName.WINGS.value and self.truth_file:
            raise ValueError("The wings script starts from the identity truth; drop truth_file")
        return self

    def tree_spec(self) -> ParsedSpec:
        return parse_tree_spec(self.tree)

    def evolver_spec(self) -> ParsedSpec:
        return parse_evolver_spec(self.evolver)

    def parsed_speedup(self) -> Speedup:
        return Speedup.parse(self.speedup)


class SweepSpec(BaseModel):
    family: TreeFamily = TreeFamily.PATH
    sizes: list[int] = Field(min_length=1)
    speedups: list[str] = Field(default_factory=lambda: ["2/1"], min_length=1)
    evolvers: list[str] = Field(default_factory=lambda: ["uniform"], min_length=1)
    repetitions: int = Field(default=5, ge=1)
    init: InitialHypothesis = InitialHypothesis.REVERSED
    iterations: Optional[int] = Field(default=None, ge=1)   # None: default budget per n
    master_seed: int = 0
    arity: int = Field(default=2, ge=1)
    degree: int = Field(default=3, ge=2)
    wings_beta: int = Field(default=4, ge=2)
    tails: TailLayout = TailLayout.LEAVES
    audit_interval: Optional[int] = Field(default=None, ge=1)

    @field_validator("family")
    @classmethod
    def _family(cls, v: TreeFamily) -> TreeFamily:
        if v is TreeFamily.FILE:
            raise ValueError("Sweeps generate their trees; 'file' is not a sweep family")
        return v

    @field_validator("sizes")
    @classmethod
    def _sizes(cls, v: list[int]) -> list[int]:
        if any(n < 2 for n in v):
            raise ValueError("Every sweep size must be >= 2")
        return v

    @field_validator("speedups")
    @classmethod
    def _speedups(cls, v: list[str]) -> list[str]:
        return [_check_speedup(s) for s in v]

    @field_validator("evolvers")
    @classmethod
    def _evolvers(cls, v: list[str]) -> list[str]:
        return [str(parse_evolver_spec(s)) for s in v]

    @model_validator(mode="after")
    def _wings_evolver_needs_wings_family(self) -> "SweepSpec":
        for e in self.evolvers:
            if parse_evolver_spec(e).name == EvolverName.WINGS.value and self.family is not TreeFamily.WINGS:
                raise ValueError("The wings evolver needs family=wings")
        return self

    def tree_spec_for(self, n: int, rep_seed: int = 0) -> str:
        """Tree spec for target size n. Wings cells use alpha = max(1, (n-1) // (beta+1))."""
        if self.family is TreeFamily.PATH:
            return f"path:n={n}"
        if self.family is TreeFamily.BALANCED:
            return f"balanced:n={n},arity={self.arity}"
        if self.family is TreeFamily.RANDOM:
            return f"random:n={n},k={self.degree},seed={rep_seed}"
        alpha = max(1, (n - 1) // (self.wings_beta + 1))
        return f"wings:alpha={alpha},beta={self.wings_beta},tails={self.tails.value}"
