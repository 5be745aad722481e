"""Problem definition, uniform grid and solution containers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .potential import PotentialExpr, parse_potential


class DomainError(ValueError):
    """Raised when a problem parameter lies outside its admissible range."""


@dataclass(frozen=True)
class ProblemSpec:
    """Parameters of the two-point problem on ``[0, b]`` with ``f(0) = 0, f(b) = L``.

    ``potential`` may be given as an expression string; it is parsed on
    construction.
    """

    alpha: float
    lam: float
    potential: Union[PotentialExpr, str] = "0"
    b: float = 1.0
    L: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not (self.b > 0.0) or not np.isfinite(self.b):
            raise DomainError(f"b must be positive and finite, got {self.b!r}")
        if not np.isfinite(self.lam) or not np.isfinite(self.L):
            raise DomainError("lambda and L must be finite")
        if isinstance(self.potential, str):
            object.__setattr__(self, "potential", parse_potential(self.potential))

    @property
    def potential_text(self) -> str:
        return self.potential.to_text()


@dataclass(frozen=True)
class UniformGrid:
    n: int
    b: float
    dt: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if not (self.b > 0.0) or not np.isfinite(self.b):
            raise DomainError(f"b must be positive and finite, got {self.b!r}")
        n = int(self.n)
        dt = self.b / n
        nodes = np.arange(n + 1, dtype=float) * dt
        nodes[0] = 0.0
        nodes[n] = self.b
        nodes.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "nodes", nodes)

    def __len__(self) -> int:
        return self.n + 1

    def index_of(self, fraction) -> int:
        """Index of the node at ``fraction * b``; the fraction must land on a node exactly."""
        from fractions import Fraction

        frac = Fraction(fraction)
        if not (0 <= frac <= 1):
            raise DomainError(f"probe fraction {fraction} outside [0, 1]")
        pos = frac * self.n
        if pos.denominator != 1:
            raise DomainError(f"probe {frac} does not fall on a node of the n={self.n} grid")
        return int(pos)


def make_grid(n: int, b: float = 1.0) -> UniformGrid:
    return UniformGrid(n, float(b))


@dataclass(frozen=True)
class Solution:
    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n + 1,):
            raise ValueError(
                f"expected {self.grid.n + 1} values, got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    def at(self, fraction) -> float:
        return float(self.values[self.grid.index_of(fraction)])
