"""
True and hypothesized labelings, the distance D(T, H) and its incremental upkeep.
"""
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from core.tree import Tree


class InvalidLabelingError(ValueError):
    """Placement is not a valid labeling for the tree."""


class InvalidMoveError(ValueError):
    """Swap or move along something that is not a tree edge."""


class InitialHypothesis(str, Enum):
    EXACT = "exact"
    REVERSED = "reversed"
    SINGLE = "single"
    RANDOM = "random"


class TrueLabeling:
    """Bijection label -> vertex, kept together with its inverse."""

    __slots__ = ("label_to_vertex", "vertex_to_label")

    def __init__(self, label_to_vertex: Sequence[int]):
        n = len(label_to_vertex)
        inverse = [-1] * n
        for label, v in enumerate(label_to_vertex):
            if not 0 <= v < n:
                raise InvalidLabelingError(f"Label {label} placed at vertex {v}, outside 0..{n - 1}")
            if inverse[v] != -1:
                raise InvalidLabelingError(f"Vertex {v} holds labels {inverse[v]} and {label}")
            inverse[v] = label
        self.label_to_vertex = list(label_to_vertex)
        self.vertex_to_label = inverse

    @classmethod
    def identity(cls, n: int) -> "TrueLabeling":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.label_to_vertex)

    def vertex_of(self, label: int) -> int:
        return self.label_to_vertex[label]

    def swap(self, u: int, v: int) -> tuple[int, int]:
        """Exchange the labels at u and v; returns (label now at v, label now at u)."""
        a, b = self.vertex_to_label[u], self.vertex_to_label[v]
        self.vertex_to_label[u], self.vertex_to_label[v] = b, a
        self.label_to_vertex[a], self.label_to_vertex[b] = v, u
        return a, b

    def copy(self) -> "TrueLabeling":
        return TrueLabeling(self.label_to_vertex)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TrueLabeling) and self.label_to_vertex == other.label_to_vertex

    def __repr__(self) -> str:
        return f"TrueLabeling({self.label_to_vertex})"


class HypothesisLabeling:
    """Label -> vertex map with per-vertex occupancy; several labels may share a vertex."""

    __slots__ = ("label_to_vertex", "occupancy")

    def __init__(self, label_to_vertex: Sequence[int], n_vertices: int | None = None):
        n = n_vertices if n_vertices is not None else len(label_to_vertex)
        occupancy = [0] * n
        for label, v in enumerate(label_to_vertex):
            if not 0 <= v < n:
                raise InvalidLabelingError(f"Label {label} hypothesized at vertex {v}, outside 0..{n - 1}")
            occupancy[v] += 1
        self.label_to_vertex = list(label_to_vertex)
        self.occupancy = occupancy

    @classmethod
    def from_truth(cls, truth: TrueLabeling) -> "HypothesisLabeling":
        return cls(truth.label_to_vertex)

    def vertex_of(self, label: int) -> int:
        return self.label_to_vertex[label]

    def move(self, label: int, to_vertex: int) -> None:
        self.occupancy[self.label_to_vertex[label]] -= 1
        self.occupancy[to_vertex] += 1
        self.label_to_vertex[label] = to_vertex

    def copy(self) -> "HypothesisLabeling":
        return HypothesisLabeling(self.label_to_vertex, len(self.occupancy))


@dataclass
class DistanceState:
    per_label: list[int]
    total: int = 0

    @classmethod
    def from_per_label(cls, per_label: list[int]) -> "DistanceState":
        return cls(per_label=per_label, total=sum(per_label))


def placement_distance(t: Tree, a: Sequence[int], b: Sequence[int]) -> int:
    """D between two label -> vertex placements on the same tree."""
    if len(a) != len(b):
        raise InvalidLabelingError(f"Placements cover {len(a)} and {len(b)} labels")
    return sum(t.distance(u, v) for u, v in zip(a, b))


def compute_distance(t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> DistanceState:
    if truth.n != t.n or len(hyp.label_to_vertex) != t.n:
        raise InvalidLabelingError(
            f"Sizes disagree: tree {t.n}, truth {truth.n}, hypothesis {len(hyp.label_to_vertex)}"
        )
    per_label = [t.distance(u, v) for u, v in zip(truth.label_to_vertex, hyp.label_to_vertex)]
    return DistanceState.from_per_label(per_label)


def apply_true_swap(
    t: Tree,
    truth: TrueLabeling,
    hyp: HypothesisLabeling,
    edge: tuple[int, int],
    state: DistanceState,
) -> int:
    """Swap the true labels on a tree edge; returns the change in D."""
    u, v = edge
    if not t.is_edge(u, v):
        raise InvalidMoveError(f"({u}, {v}) is not a tree edge")
    a, b = truth.swap(u, v)
    hv = hyp.label_to_vertex
    da = t.distance(v, hv[a])
    db = t.distance(u, hv[b])
    delta = (da - state.per_label[a]) + (db - state.per_label[b])
    state.per_label[a] = da
    state.per_label[b] = db
    state.total += delta
    return delta


def apply_hypothesis_move(
    t: Tree,
    truth: TrueLabeling,
    hyp: HypothesisLabeling,
    label: int,
    to_vertex: int,
    state: DistanceState,
) -> int:
    """Move one hypothesized label to an adjacent vertex; returns the change in D."""
    here = hyp.label_to_vertex[label]
    if not t.is_edge(here, to_vertex):
        raise InvalidMoveError(f"Label {label}: {here} -> {to_vertex} is not along a tree edge")
    hyp.move(label, to_vertex)
    d = t.distance(truth.label_to_vertex[label], to_vertex)
    delta = d - state.per_label[label]
    state.per_label[label] = d
    state.total += delta
    return delta


def max_vertex_load(hyp: HypothesisLabeling) -> int:
    return max(hyp.occupancy, default=0)


def make_hypothesis(
    kind: InitialHypothesis | str,
    t: Tree,
    truth: TrueLabeling,
    seed: int | np.random.Generator = 0,
    vertex: int | None = None,
) -> HypothesisLabeling:
    """Starting hypothesis.

    reversed puts each label at vertex n-1-M_T(label), the far end of a path
    labeled in vertex order. single stacks every label on `vertex` (the root
    by default). random places labels independently and uniformly.
    """
    kind = InitialHypothesis(kind)
    n = t.n
    if kind is InitialHypothesis.EXACT:
        return HypothesisLabeling.from_truth(truth)
    if kind is InitialHypothesis.REVERSED:
        return HypothesisLabeling([n - 1 - v for v in truth.label_to_vertex])
    if kind is InitialHypothesis.SINGLE:
        target = t.root if vertex is None else vertex
        return HypothesisLabeling([target] * n)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return HypothesisLabeling(rng.integers(0, n, size=n).tolist())
