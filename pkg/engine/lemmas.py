"""
Per-iteration bound checks over recorded runs, and steady-state statistics.
"""
from __future__ import annotations
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from engine.speedup import Speedup

ROUNDING_SLACK = 2


@dataclass
class LemmaReport:
    iterations: int
    bound_violations: list[int] = field(default_factory=list)      # j with dt_j below the c/(2+c) bound
    identity_violations: list[int] = field(default_factory=list)   # j with dt_j != n + A_j

    @property
    def violations(self) -> int:
        return len(self.bound_violations) + len(self.identity_violations)

    @property
    def ok(self) -> bool:
        return self.violations == 0


def check_lemma_bounds(records: Sequence, speedup: Speedup, n: int, slack: int = ROUNDING_SLACK) -> LemmaReport:
    """dt_j >= c/(2+c) * (D_j + n) - slack, checked as dt_j(p+2q) >= p(D_j+n) - slack(p+2q)."""
    p, q = speedup.p, speedup.q
    scale = p + 2 * q
    report = LemmaReport(iterations=len(records))
    for r in records:
        if r.dt_j * scale < p * (r.D_j + n) - slack * scale:
            report.bound_violations.append(r.j)
        if r.dt_j != n + r.A_j:
            report.identity_violations.append(r.j)
    return report


def steady_state_mean(records: Sequence, tail: float = 0.25, attr: str = "D_j") -> float | None:
    """Mean of `attr` over the last `tail` share of iterations (at least one); None with no records."""
    if not records:
        return None
    if not 0 < tail <= 1:
        raise ValueError(f"tail must be in (0, 1], got {tail}")
    k = max(1, math.ceil(len(records) * tail))
    return float(np.mean([getattr(r, attr) for r in records[-k:]]))


def default_iteration_budget(n: int) -> int:
    return max(50, 4 * math.ceil(math.log2(max(n, 2))))
