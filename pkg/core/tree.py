"""
Tree topology: adjacency, rooted indices and the doubling ancestor table.

The tree is rooted at vertex 0. Distance and first-hop queries go through the
ancestor table in O(log n); plain BFS lives in `verify.brute`.
"""
from __future__ import annotations
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


class InvalidTreeError(ValueError):
    """Edge list does not describe a tree on vertices 0..n-1."""


@dataclass(frozen=True)
class Tree:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]           # parent[root] == -1
    depth: tuple[int, ...]
    ancestor_table: tuple[tuple[int, ...], ...]  # level k: 2^k-th ancestor, root maps to itself
    max_degree: int
    edges: tuple[Edge, ...]           # canonical (min, max) pairs, sorted
    root: int = 0
    _neighbor_sets: tuple[frozenset[int], ...] = field(default=(), repr=False, compare=False)

    # ── Structure ───────────────────────────────────────────────────

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._neighbor_sets[u]

    def edge_index(self, u: int, v: int) -> int:
        """Position of edge (u, v) in `edges`; raises KeyError for non-edges."""
        key = (u, v) if u < v else (v, u)
        lo, hi = 0, len(self.edges)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.edges[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.edges) or self.edges[lo] != key:
            raise KeyError(key)
        return lo

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    # ── Queries ─────────────────────────────────────────────────────

    def level_ancestor(self, v: int, k: int) -> int:
        """Ancestor of v that is k levels up (k <= depth(v))."""
        level = 0
        while k:
            if k & 1:
                v = self.ancestor_table[level][v]
            k >>= 1
            level += 1
        return v

    def lca(self, u: int, v: int) -> int:
        depth = self.depth
        if depth[u] < depth[v]:
            u, v = v, u
        u = self.level_ancestor(u, depth[u] - depth[v])
        if u == v:
            return u
        for level in range(len(self.ancestor_table) - 1, -1, -1):
            row = self.ancestor_table[level]
            if row[u] != row[v]:
                u, v = row[u], row[v]
        return self.parent[u]

    def distance(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self.depth[u] + self.depth[v] - 2 * self.depth[self.lca(u, v)]

    def first_hop(self, u: int, w: int) -> int:
        """Neighbor of u on the path u → w, or -1 when u == w."""
        if u == w:
            return -1
        gap = self.depth[w] - self.depth[u]
        if gap > 0:
            below = self.level_ancestor(w, gap - 1)
            if self.parent[below] == u:
                return below
        return self.parent[u]


def distance(t: Tree, u: int, v: int) -> int:
    return t.distance(u, v)


def build_tree(edges: Iterable[Sequence[int]], n: int | None = None) -> Tree:
    """Validate an edge list and build every index structure.

    `n` defaults to len(edges) + 1. Rejects self-loops, duplicate edges,
    out-of-range ids, cycles and disconnected input.
    """
    edge_list = [(int(e[0]), int(e[1])) for e in edges]
    if n is None:
        n = len(edge_list) + 1
    if n < 1:
        raise InvalidTreeError("Tree needs at least one vertex")
    if len(edge_list) != n - 1:
        raise InvalidTreeError(f"A tree on {n} vertices has {n - 1} edges, got {len(edge_list)}")

    seen: set[Edge] = set()
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidTreeError(f"Edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise InvalidTreeError(f"Self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InvalidTreeError(f"Duplicate edge {key}")
        seen.add(key)
        neighbors[u].append(v)
        neighbors[v].append(u)

    root = 0
    parent = [-2] * n
    depth = [0] * n
    parent[root] = -1
    queue = deque([root])
    reached = 1
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if v == parent[u]:
                continue
            if parent[v] != -2:
                raise InvalidTreeError(f"Cycle through edge ({u}, {v})")
            parent[v] = u
            depth[v] = depth[u] + 1
            reached += 1
            queue.append(v)
    if reached != n:
        raise InvalidTreeError(f"Disconnected: {n - reached} vertex(es) unreachable from root {root}")

    # Doubling table: up[k][v] = up[k-1][up[k-1][v]], root is its own ancestor
    levels = max(1, (max(depth) or 1).bit_length())
    base = np.array(parent, dtype=np.int64)
    base[root] = root
    table = [base]
    for _ in range(1, levels):
        table.append(table[-1][table[-1]])

    return Tree(
        n=n,
        adjacency=tuple(tuple(sorted(nb)) for nb in neighbors),
        parent=tuple(parent),
        depth=tuple(depth),
        ancestor_table=tuple(tuple(row.tolist()) for row in table),
        max_degree=max((len(nb) for nb in neighbors), default=0),
        edges=tuple(sorted(seen)),
        root=root,
        _neighbor_sets=tuple(frozenset(nb) for nb in neighbors),
    )
