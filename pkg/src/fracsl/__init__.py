"""Numerical solver for the fractional Euler-Lagrange / Sturm-Liouville problem

    cD_{b-}^alpha D_{0+}^alpha f(t) + (lam + q(t)) f(t) = 0,   f(0) = 0,  f(b) = L,

on ``[0, b]`` with ``0 < alpha <= 1``, via its integral form, trapezoid-type
fractional quadrature and a dense LUP solve.

>>> from fracsl import ProblemSpec, solve
>>> sol = solve(ProblemSpec(alpha=0.5, lam=-3.0), n=256)
>>> round(sol.at("1/2"), 6)
4.730523
"""

__version__ = "0.1.0"

from .assembly import LinearSystem, assemble, solve, solve_system
from .convergence import (
    ConvergenceRecord,
    DegenerateLadder,
    StudyError,
    rate_from_ladder,
    run_study,
)
from .grid import DomainError, ProblemSpec, Solution, UniformGrid, make_grid
from .lup import LupFactors, SingularMatrix, lup_decompose, lup_solve
from .oracle import (
    NonConverged,
    OracleConfig,
    ResonantLambda,
    analytic_alpha1,
    direct_left_integral,
    direct_right_integral,
    power_law_solution,
)
from .potential import (
    EvalError,
    PotentialExpr,
    PotentialSyntaxError,
    UnknownIdentifierError,
    eval_potential,
    parse_potential,
)
from .quadrature import (
    WeightSet,
    apply_left_integral,
    apply_right_integral,
    composition_matrix,
    left_weight,
    make_weights,
    right_weight,
)

__all__ = [
    "ProblemSpec",
    "UniformGrid",
    "Solution",
    "DomainError",
    "make_grid",
    "PotentialExpr",
    "PotentialSyntaxError",
    "UnknownIdentifierError",
    "EvalError",
    "parse_potential",
    "eval_potential",
    "WeightSet",
    "make_weights",
    "left_weight",
    "right_weight",
    "apply_left_integral",
    "apply_right_integral",
    "composition_matrix",
    "LinearSystem",
    "assemble",
    "solve",
    "solve_system",
    "LupFactors",
    "SingularMatrix",
    "lup_decompose",
    "lup_solve",
    "ConvergenceRecord",
    "DegenerateLadder",
    "StudyError",
    "rate_from_ladder",
    "run_study",
    "OracleConfig",
    "NonConverged",
    "ResonantLambda",
    "analytic_alpha1",
    "power_law_solution",
    "direct_left_integral",
    "direct_right_integral",
]
