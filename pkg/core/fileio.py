"""
Plain-text formats: edge lists, wings role maps, labelings and swap scripts.

    tree:    "n" then n-1 lines "u v"
    roles:   lines "vertex role index"
    labels:  n lines "label vertex"
    script:  "m" then m lines "u v"
"""
from __future__ import annotations
import logging
from pathlib import Path
from typing import Iterable

from core.generators import VertexRole
from core.labeling import HypothesisLabeling, InvalidLabelingError, TrueLabeling
from core.tree import InvalidTreeError, Tree, build_tree

logger = logging.getLogger(__name__)


def _data_lines(path: Path) -> list[list[str]]:
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append(line.split())
    return rows


def _pairs(rows: Iterable[list[str]], what: str) -> list[tuple[int, int]]:
    pairs = []
    for row in rows:
        if len(row) != 2:
            raise ValueError(f"Malformed {what} line: {' '.join(row)!r}")
        pairs.append((int(row[0]), int(row[1])))
    return pairs


# ── Trees ──────────────────────────────────────────────────────────

def write_tree(t: Tree, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.edges]
    path.write_text("\n".join(lines) + "\n")
    return path


def read_tree(path: str | Path) -> Tree:
    rows = _data_lines(Path(path))
    if not rows or len(rows[0]) != 1:
        raise InvalidTreeError(f"{path}: first line must be the vertex count")
    n = int(rows[0][0])
    return build_tree(_pairs(rows[1:], "edge"), n=n)


def write_roles(roles: Iterable[VertexRole], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{v} {r.role.value} {r.index}" for v, r in enumerate(roles)]
    path.write_text("\n".join(lines) + "\n")
    return path


# ── Labelings ──────────────────────────────────────────────────────

def write_labeling(label_to_vertex: Iterable[int], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{label} {v}\n" for label, v in enumerate(label_to_vertex)))
    return path


def _placement(path: Path) -> list[int]:
    pairs = _pairs(_data_lines(path), "labeling")
    placement = [-1] * len(pairs)
    for label, v in pairs:
        if not 0 <= label < len(pairs) or placement[label] != -1:
            raise InvalidLabelingError(f"{path}: label {label} missing, repeated or out of range")
        placement[label] = v
    return placement


def read_true_labeling(path: str | Path) -> TrueLabeling:
    """Truth files must be permutations."""
    return TrueLabeling(_placement(Path(path)))


def read_hypothesis(path: str | Path, n_vertices: int | None = None) -> HypothesisLabeling:
    return HypothesisLabeling(_placement(Path(path)), n_vertices)


# ── Swap scripts ───────────────────────────────────────────────────

def write_script(edges: Iterable[tuple[int, int]], path: str | Path) -> Path:
    edges = list(edges)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [str(len(edges))] + [f"{u} {v}" for u, v in edges]
    path.write_text("\n".join(lines) + "\n")
    logger.info(f"[SCRIPT] wrote {len(edges)} swaps to {path}")
    return path


def read_script_edges(path: str | Path) -> list[tuple[int, int]]:
    rows = _data_lines(Path(path))
    if not rows or len(rows[0]) != 1:
        raise ValueError(f"{path}: first line must be the script length")
    m = int(rows[0][0])
    edges = _pairs(rows[1:], "script")
    if len(edges) != m:
        raise ValueError(f"{path}: declares {m} swaps, found {len(edges)}")
    return edges
