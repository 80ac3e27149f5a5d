"""
Brute-force references, independent of the tree's ancestor tables.
"""
from __future__ import annotations
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import networkx as nx

from core.labeling import HypothesisLabeling, TrueLabeling
from core.tree import Tree

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 1_000_000


def bfs_distance(t: Tree, u: int, v: int) -> int:
    return nx.shortest_path_length(t.to_networkx(), u, v)


def bfs_first_edge(t: Tree, u: int, w: int) -> tuple[int, int]:
    """First edge on the path u -> w."""
    if u == w:
        raise ValueError(f"No first edge from a vertex to itself ({u})")
    path = nx.shortest_path(t.to_networkx(), u, w)
    return path[0], path[1]


def naive_total_distance(t: Tree, truth: TrueLabeling, hyp: HypothesisLabeling) -> int:
    lengths = dict(nx.all_pairs_shortest_path_length(t.to_networkx()))
    return sum(lengths[u][v] for u, v in zip(truth.label_to_vertex, hyp.label_to_vertex))


class SearchStatus(str, Enum):
    FOUND = "found"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SwapSearchResult:
    status: SearchStatus
    swaps: int | None
    nodes_expanded: int

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


def _pack(occupant: Sequence[int], base: int) -> int:
    key = 0
    for label in occupant:
        key = key * base + label
    return key


def _occupants(label_to_vertex: Sequence[int]) -> list[int]:
    occupant = [0] * len(label_to_vertex)
    for label, v in enumerate(label_to_vertex):
        occupant[v] = label
    return occupant


def min_swaps_bfs(
    t: Tree,
    start: Sequence[int],
    goal: Sequence[int],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SwapSearchResult:
    """Fewest adjacent swaps taking placement `start` to `goal` (both label -> vertex).

    Plain BFS over vertex -> label arrangements keyed as base-n integers.
    """
    n = t.n
    for placement in (start, goal):
        if len(placement) != n:
            raise ValueError(f"Placement covers {len(placement)} labels, tree has {n} vertices")
        TrueLabeling(placement)   # raises on a non-permutation
    source = _occupants(start)
    target = _pack(_occupants(goal), n)
    source_key = _pack(source, n)
    if source_key == target:
        return SwapSearchResult(SearchStatus.FOUND, 0, 0)

    seen = {source_key}
    queue = deque([(source, 0)])
    expanded = 0
    while queue:
        occupant, depth = queue.popleft()
        expanded += 1
        if expanded > node_budget:
            logger.info(f"[VERIFY] swap search stopped after {node_budget} nodes")
            return SwapSearchResult(SearchStatus.BUDGET_EXCEEDED, None, expanded - 1)
        for u, v in t.edges:
            nxt = occupant.copy()
            nxt[u], nxt[v] = nxt[v], nxt[u]
            key = _pack(nxt, n)
            if key == target:
                return SwapSearchResult(SearchStatus.FOUND, depth + 1, expanded)
            if key not in seen:
                seen.add(key)
                queue.append((nxt, depth + 1))
    raise RuntimeError("Swap search exhausted a connected tree without reaching the goal")
