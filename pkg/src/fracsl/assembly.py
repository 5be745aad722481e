"""Dense linear system for the discretized integral equation.

For interior nodes ``0 < i < n``::

    f_i + sum_k (lam + q_k) * (A[i, k] - (i/n)**alpha * A[n, k]) * f_k = (i/n)**alpha * L

where ``A`` is the composition matrix.  Rows 0 and n reduce to ``f_0 = 0``
and ``f_n = L`` and are written as unit rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import ProblemSpec, Solution, UniformGrid, make_grid
from .lup import lup_decompose, lup_solve
from .potential import eval_on_nodes
from .quadrature import composition_matrix, make_weights

__all__ = ["LinearSystem", "assemble", "solve", "solve_system"]


@dataclass(frozen=True)
class LinearSystem:
    matrix: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    grid: UniformGrid
    # rows 0 and n as produced by the formula, before being replaced by unit rows
    raw_boundary_rows: tuple = field(default=(), repr=False, compare=False)


def boundary_ratios(alpha: float, n: int) -> np.ndarray:
    """``(i/n)**alpha`` from the integer ratio, exactly 0 and 1 at the ends."""
    r = np.power(np.arange(n + 1) / n, alpha)
    r[0] = 0.0
    r[n] = 1.0
    return r


def assemble(spec: ProblemSpec, grid: UniformGrid, A: np.ndarray) -> LinearSystem:
    n = grid.n
    A = np.asarray(A, dtype=float)
    if A.shape != (n + 1, n + 1):
        raise ValueError(f"composition matrix has shape {A.shape}, grid needs {(n + 1, n + 1)}")
    if grid.b != spec.b:
        raise ValueError(f"grid length {grid.b} differs from problem length {spec.b}")

    coef = spec.lam + eval_on_nodes(spec.potential, grid.nodes)
    r = boundary_ratios(spec.alpha, n)

    M = A - np.outer(r, A[n])
    M *= coef
    M[np.diag_indices(n + 1)] += 1.0
    rhs = r * spec.L

    raw = ((M[0].copy(), rhs[0]), (M[n].copy(), rhs[n]))
    M[0] = 0.0
    M[0, 0] = 1.0
    M[n] = 0.0
    M[n, n] = 1.0
    rhs[0] = 0.0
    rhs[n] = spec.L
    return LinearSystem(M, rhs, grid, raw)


def solve_system(system: LinearSystem, refine: bool = False) -> Solution:
    factors = lup_decompose(system.matrix)
    values = lup_solve(factors, system.rhs, system.matrix, refine=refine)
    return Solution(system.grid, values)


def solve(spec: ProblemSpec, n: int, refine: bool = False) -> Solution:
    """Solve the boundary-value problem on a uniform grid with ``n`` intervals."""
    grid = make_grid(n, spec.b)
    ws = make_weights(spec.alpha, grid)
    system = assemble(spec, grid, composition_matrix(ws))
    return solve_system(system, refine=refine)
