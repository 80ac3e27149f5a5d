"""
Tree families: paths, bounded-degree random trees, complete k-ary trees and the
wings/tails lower-bound tree.
"""
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.tree import InvalidTreeError, Tree, build_tree


class Role(str, Enum):
    CENTER = "center"
    WING = "wing"
    TAIL = "tail"


class TailLayout(str, Enum):
    LEAVES = "leaves"   # alpha separate leaves on the center
    CHAIN = "chain"     # one path of alpha vertices hanging off the center


@dataclass(frozen=True)
class VertexRole:
    role: Role
    index: int       # wing number, tail number, or 0 for the center
    depth: int = 0   # depth inside the wing (1..alpha); 0 otherwise


@dataclass(frozen=True)
class WingsTree:
    tree: Tree
    alpha: int
    beta: int
    tails: TailLayout
    roles: tuple[VertexRole, ...]

    center: int = 0

    def wing_vertex(self, wing: int, depth: int) -> int:
        """Vertex at `depth` (1..alpha) of wing `wing` (0..beta-1)."""
        return 1 + wing * self.alpha + (depth - 1)

    def tail_vertex(self, j: int) -> int:
        return 1 + self.beta * self.alpha + j


def _require_size(n: int) -> None:
    if n < 2:
        raise InvalidTreeError(f"Need n >= 2, got {n}")


def gen_path(n: int) -> Tree:
    _require_size(n)
    return build_tree([(i, i + 1) for i in range(n - 1)])


def gen_balanced(n: int, arity: int) -> Tree:
    """First n vertices of the complete `arity`-ary tree in BFS order."""
    _require_size(n)
    if arity < 1:
        raise InvalidTreeError(f"Arity must be >= 1, got {arity}")
    return build_tree([((v - 1) // arity, v) for v in range(1, n)])


def gen_random_bounded(n: int, k: int, seed: int) -> Tree:
    """Sequential random attachment with a degree cap.

    Vertex v attaches to an earlier vertex drawn uniformly from those whose
    degree is still below k. This is the distribution of rejection sampling
    over earlier vertices, without the rejection loop.
    """
    _require_size(n)
    if k < 2:
        raise InvalidTreeError(f"Degree bound k={k} cannot hold a tree on {n} vertices")
    rng = np.random.default_rng(seed)
    degree = [0] * n
    open_vertices = [0]           # earlier vertices with degree < k
    slot = {0: 0}                 # vertex -> index in open_vertices
    edges = []

    def close(u: int) -> None:
        i = slot.pop(u)
        last = open_vertices.pop()
        if last != u:
            open_vertices[i] = last
            slot[last] = i

    for v in range(1, n):
        u = open_vertices[int(rng.integers(len(open_vertices)))]
        edges.append((u, v))
        degree[u] += 1
        degree[v] = 1
        if degree[u] >= k:
            close(u)
        slot[v] = len(open_vertices)
        open_vertices.append(v)
    return build_tree(edges)


def gen_wings(alpha: int, beta: int, tails: TailLayout | str = TailLayout.LEAVES) -> WingsTree:
    """Center 0, beta wings of alpha vertices each, and alpha tail vertices.

    Wing i occupies vertices 1 + i*alpha .. alpha + i*alpha, shallowest first;
    tails take the last alpha ids.
    """
    if alpha < 1:
        raise InvalidTreeError(f"alpha must be >= 1, got {alpha}")
    if beta < 2:
        raise InvalidTreeError(f"beta must be >= 2, got {beta}")
    tails = TailLayout(tails)

    n = alpha * beta + alpha + 1
    roles: list[VertexRole] = [VertexRole(Role.CENTER, 0)]
    edges = []
    for i in range(beta):
        prev = 0
        for d in range(1, alpha + 1):
            v = 1 + i * alpha + (d - 1)
            edges.append((prev, v))
            roles.append(VertexRole(Role.WING, i, d))
            prev = v
    prev = 0
    for j in range(alpha):
        v = 1 + beta * alpha + j
        edges.append((prev if tails is TailLayout.CHAIN else 0, v))
        roles.append(VertexRole(Role.TAIL, j))
        prev = v

    tree = build_tree(edges, n=n)
    return WingsTree(tree=tree, alpha=alpha, beta=beta, tails=tails, roles=tuple(roles))
