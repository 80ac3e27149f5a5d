"""
Rational speedup c = p/q: the evolver acts once every c algorithm steps.
"""
from __future__ import annotations
import re
from dataclasses import dataclass
from fractions import Fraction

_PATTERN = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


class InvalidSpeedupError(ValueError):
    """Speedup text is not p/q with p >= q >= 1."""


@dataclass(frozen=True)
class Speedup:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1 or self.p < self.q:
            raise InvalidSpeedupError(f"Speedup needs p >= q >= 1, got {self.p}/{self.q}")
        reduced = Fraction(self.p, self.q)
        object.__setattr__(self, "p", reduced.numerator)
        object.__setattr__(self, "q", reduced.denominator)

    @classmethod
    def parse(cls, text: str) -> "Speedup":
        match = _PATTERN.match(text)
        if not match:
            raise InvalidSpeedupError(f"Speedup must be written p/q, got {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def evolver_time(self, k: int) -> Fraction:
        """Time of the k-th evolver action."""
        return Fraction(k * self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def __float__(self) -> float:
        return self.p / self.q
