"""
Swap scripts for the scripted adversary, and the two lower-bound generators:
path reversal and the wings/tails cyclic shift.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Sequence

from core.generators import TailLayout, WingsTree, gen_wings
from core.labeling import InvalidMoveError, TrueLabeling, placement_distance
from core.tree import InvalidTreeError, Tree

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True)
class SwapScript:
    edges: tuple[Edge, ...]
    start: tuple[int, ...] | None = None   # declared label -> vertex before the script
    end: tuple[int, ...] | None = None     # declared label -> vertex after the script

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def reversed(self) -> "SwapScript":
        return SwapScript(tuple(reversed(self.edges)), start=self.end, end=self.start)

    def validate(self, t: Tree) -> None:
        """Every entry is a tree edge and start maps to end, when both are declared."""
        for k, (u, v) in enumerate(self.edges):
            if not t.is_edge(u, v):
                raise InvalidMoveError(f"Script entry {k}: ({u}, {v}) is not a tree edge")
        if self.start is not None and self.end is not None:
            result = apply_script(TrueLabeling(self.start), self)
            if tuple(result.label_to_vertex) != self.end:
                raise ValueError("Script does not carry its declared start labeling to its end labeling")


def apply_script(truth: TrueLabeling, script: SwapScript | Sequence[Edge]) -> TrueLabeling:
    """Apply every swap in order, in place; returns `truth`."""
    edges = script.edges if isinstance(script, SwapScript) else script
    for u, v in edges:
        truth.swap(u, v)
    return truth


def _check_swap_lower_bound(t: Tree, start: Sequence[int], end: Sequence[int], m: int) -> int:
    # one swap moves two labels by one edge each
    d = placement_distance(t, end, start)
    if 2 * m < d:
        raise RuntimeError(f"Script of {m} swaps cannot realise distance {d}")
    return d


# ── Path reversal ──────────────────────────────────────────────────

def path_order(t: Tree) -> list[int]:
    """Vertices of a path tree from its lowest-numbered endpoint."""
    if t.n < 2 or t.max_degree > 2:
        raise InvalidTreeError("Reversal scripts need a path on at least 2 vertices")
    start = min(v for v in range(t.n) if t.degree(v) == 1)
    order = [start]
    prev = -1
    while len(order) < t.n:
        here = order[-1]
        nxt = next(w for w in t.adjacency[here] if w != prev)
        prev = here
        order.append(nxt)
    return order


def make_reversal_script(t: Tree) -> SwapScript:
    """Bubble passes that reverse the labels along a path: n(n-1)/2 swaps."""
    order = path_order(t)
    n = t.n
    edges = []
    for i in range(n - 1):
        for j in range(n - 1 - i):
            edges.append((order[j], order[j + 1]))
    start = tuple(range(n))
    end = [0] * n
    for i, v in enumerate(order):
        end[v] = order[n - 1 - i]
    script = SwapScript(tuple(edges), start=start, end=tuple(end))
    _check_swap_lower_bound(t, start, end, script.m)
    return script


# ── Wings / tails ──────────────────────────────────────────────────

def opt_wings(alpha: int, beta: int) -> int:
    """Reference swap count (beta+1)(alpha(alpha+1)/2 + 2 alpha) for the wings shift."""
    return (beta + 1) * (alpha * (alpha + 1) // 2 + 2 * alpha)


@dataclass(frozen=True)
class WingsScript:
    wings: WingsTree
    script: SwapScript
    start: TrueLabeling       # T0, the identity
    end: TrueLabeling         # T1, wing blocks shifted one wing on
    opt: int
    distance: int             # D(T1, T0) = beta * alpha * (alpha + 1)

    @property
    def m(self) -> int:
        return self.script.m


class _ScriptBuilder:
    """Records swaps while keeping the labeling they produce."""

    def __init__(self, t: Tree, start: TrueLabeling):
        self.tree = t
        self.state = start.copy()
        self.edges: list[Edge] = []

    def swap(self, u: int, v: int) -> None:
        self.state.swap(u, v)
        self.edges.append((u, v))

    def label_at(self, v: int) -> int:
        return self.state.vertex_to_label[v]

    def push_from_center(self, center: int, leg: Sequence[int], depth: int) -> None:
        """Walk the center's label out to leg[depth-1]; leg labels shift one step inward."""
        self.swap(center, leg[0])
        for k in range(1, depth):
            self.swap(leg[k - 1], leg[k])


def wings_target(wings: WingsTree) -> TrueLabeling:
    """T1: the block on wing i moves to wing i+1 (mod beta), depths kept."""
    t1 = list(range(wings.tree.n))
    for i in range(wings.beta):
        for d in range(1, wings.alpha + 1):
            t1[wings.wing_vertex(i, d)] = wings.wing_vertex((i + 1) % wings.beta, d)
    return TrueLabeling(t1)


def _route_through_leaves(b: _ScriptBuilder, wings: WingsTree, t0: TrueLabeling) -> None:
    """beta+1 leg/parking exchanges with the tail leaves as the parking area.

    Parking starts with the tail labels. Exchanging a leg with the parking
    walks each parked label into the leg, deepest target first, and parks the
    leg's labels on the freed leaves. Order: last wing, then wings 0..beta-1;
    the parking ends holding the tail labels again.
    """
    alpha, beta, c = wings.alpha, wings.beta, wings.center
    legs = [[wings.wing_vertex(i, d) for d in range(1, alpha + 1)] for i in range(beta)]
    leaves = [wings.tail_vertex(j) for j in range(alpha)]
    leaf_set = set(leaves)
    center_label = t0.vertex_to_label[c]

    def block(vertices: Sequence[int]) -> list[int]:
        return [t0.vertex_to_label[v] for v in vertices]

    def exchange(leg: list[int], incoming: list[int]) -> None:
        for d in range(alpha, 0, -1):
            leaf = b.state.label_to_vertex[incoming[d - 1]]
            if leaf not in leaf_set:
                raise RuntimeError(f"Label {incoming[d - 1]} expected on a tail leaf, found at {leaf}")
            b.swap(c, leaf)
            b.push_from_center(c, leg, d)
        b.swap(c, b.state.label_to_vertex[center_label])

    exchange(legs[beta - 1], block(leaves))
    for i in range(beta - 1):
        exchange(legs[i], block(legs[(i - 1) % beta]))
    exchange(legs[beta - 1], block(legs[beta - 2]))

    # Parked tail labels can come back on permuted leaves; rotate each cycle home through the center.
    for leaf in leaves:
        if b.label_at(leaf) == t0.vertex_to_label[leaf]:
            continue
        b.swap(c, leaf)
        while b.label_at(c) != center_label:
            b.swap(c, t0.label_to_vertex[b.label_at(c)])


def _route_by_rotation(b: _ScriptBuilder, wings: WingsTree) -> None:
    """alpha rounds: bubble each wing's deepest label to depth 1, then rotate depth 1 around the center.

    Uses only the wings and the center, so it works for either tail layout;
    costs beta*alpha^2 + alpha swaps.
    """
    alpha, beta, c = wings.alpha, wings.beta, wings.center
    legs = [[wings.wing_vertex(i, d) for d in range(1, alpha + 1)] for i in range(beta)]
    for _ in range(alpha):
        for leg in legs:
            for k in range(alpha - 1, 0, -1):
                b.swap(leg[k - 1], leg[k])
        b.swap(c, legs[beta - 1][0])
        for i in range(beta - 1):
            b.swap(c, legs[i][0])
        b.swap(c, legs[beta - 1][0])


def make_wings_script(
    alpha: int,
    beta: int,
    tails: TailLayout | str = TailLayout.LEAVES,
) -> WingsScript:
    """Swap script from T0 (identity) to T1 on gen_wings(alpha, beta, tails)."""
    wings = gen_wings(alpha, beta, tails)
    t = wings.tree
    t0 = TrueLabeling.identity(t.n)
    t1 = wings_target(wings)

    b = _ScriptBuilder(t, t0)
    if wings.tails is TailLayout.LEAVES:
        _route_through_leaves(b, wings, t0)
    else:
        _route_by_rotation(b, wings)
    if b.state != t1:
        raise RuntimeError(f"Wings routing for alpha={alpha}, beta={beta} missed the target labeling")

    script = SwapScript(
        tuple(b.edges),
        start=tuple(t0.label_to_vertex),
        end=tuple(t1.label_to_vertex),
    )
    d = _check_swap_lower_bound(t, t0.label_to_vertex, t1.label_to_vertex, script.m)
    opt = opt_wings(alpha, beta)
    if script.m > opt:
        logger.warning(f"[SCRIPT] wings({alpha},{beta},{wings.tails.value}): {script.m} swaps exceeds opt={opt}")
    else:
        logger.debug(f"[SCRIPT] wings({alpha},{beta},{wings.tails.value}): {script.m} swaps, opt={opt}")
    return WingsScript(wings=wings, script=script, start=t0, end=t1, opt=opt, distance=d)
