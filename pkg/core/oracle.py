"""
Directional oracle: given (label, vertex) it answers "here" or the first edge
toward the label's true vertex.
"""
from __future__ import annotations
from dataclasses import dataclass

from core.labeling import TrueLabeling
from core.tree import Tree


@dataclass(frozen=True, slots=True)
class OracleAnswer:
    vertex: int
    next_vertex: int | None = None   # None means AtTarget

    @property
    def at_target(self) -> bool:
        return self.next_vertex is None

    @property
    def edge(self) -> tuple[int, int] | None:
        return None if self.next_vertex is None else (self.vertex, self.next_vertex)


def oracle_query(t: Tree, truth: TrueLabeling, label: int, u: int) -> OracleAnswer:
    hop = t.first_hop(u, truth.label_to_vertex[label])
    return OracleAnswer(u, None if hop < 0 else hop)
