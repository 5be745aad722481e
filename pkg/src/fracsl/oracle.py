"""Reference values used to validate the discrete operators and the solver.

Nothing here is on the production solve path.  The direct quadrature
interpolates ``phi`` linearly on a fine grid and integrates the weakly
singular kernel exactly on each panel, which is a different rule from the
endpoint-mean weights in :mod:`fracsl.quadrature`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gamma

from .grid import DomainError, ProblemSpec

__all__ = [
    "OracleConfig",
    "NonConverged",
    "ResonantLambda",
    "analytic_alpha1",
    "power_law_solution",
    "direct_left_integral",
    "direct_right_integral",
]

STABILITY_TOL = 1e-8
MAX_DOUBLINGS = 4


class NonConverged(ArithmeticError):
    pass


class ResonantLambda(DomainError):
    def __init__(self, lam: float, b: float):
        self.lam = lam
        self.b = b
        k = math.sqrt(-lam) * b / math.pi
        super().__init__(
            f"lambda={lam!r} is resonant on [0, {b!r}] (sqrt(-lambda)*b = {k:.12g} pi)"
        )


@dataclass(frozen=True)
class OracleConfig:
    resolution: int = 2048

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be positive")

    @classmethod
    def for_grid(cls, n: int, factor: int = 8) -> "OracleConfig":
        return cls(max(factor * int(n), 2048))


def analytic_alpha1(lam: float, b: float, L: float, t):
    """Classical (``alpha = 1``, ``q = 0``) solution ``L sin(k t) / sin(k b)``, ``k = sqrt(-lam)``."""
    if not lam < 0:
        raise DomainError(f"closed form needs lambda < 0, got {lam!r}")
    k = math.sqrt(-lam)
    denom = math.sin(k * b)
    if abs(denom) < 1e-12:
        raise ResonantLambda(lam, b)
    return L * np.sin(k * np.asarray(t, dtype=float)) / denom


def power_law_solution(spec: ProblemSpec, t):
    """Exact solution ``L (t/b)**alpha`` when ``lam + q(t)`` vanishes identically."""
    return spec.L * np.power(np.asarray(t, dtype=float) / spec.b, spec.alpha)


def _product_linear(phi: Callable, alpha: float, t: float, panels: int) -> float:
    # distances s = t - tau at panel ends; integrate s**(alpha-1) against the
    # linear interpolant of phi exactly on each panel
    tau = np.linspace(0.0, t, panels + 1)
    tau[-1] = t
    y = np.asarray(phi(tau), dtype=float) * np.ones_like(tau)
    s = t - tau
    sa, sb = s[:-1], s[1:]
    h = np.diff(tau)
    m0 = (sa**alpha - sb**alpha) / alpha
    # integral of s**(alpha-1) * (sa - s) ds over [sb, sa]
    m1 = sa * m0 - (sa ** (alpha + 1) - sb ** (alpha + 1)) / (alpha + 1)
    slope = np.diff(y) / h
    total = np.sum(y[:-1] * m0 + slope * m1)
    return float(total / gamma(alpha))


def direct_left_integral(phi: Callable, alpha: float, t: float, cfg: OracleConfig = OracleConfig()) -> float:
    """Left Riemann-Liouville integral of ``phi`` over ``[0, t]``.

    The panel count is doubled until the result moves by less than 1e-8;
    :class:`NonConverged` is raised after four unsuccessful doublings.
    """
    if not (0.0 < alpha):
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    t = float(t)
    if t <= 0.0:
        return 0.0
    panels = cfg.resolution
    prev = _product_linear(phi, alpha, t, panels)
    for _ in range(MAX_DOUBLINGS):
        panels *= 2
        cur = _product_linear(phi, alpha, t, panels)
        change = abs(cur - prev)
        if change < STABILITY_TOL:
            return cur
        prev = cur
    raise NonConverged(
        f"left integral at t={t!r} still moving by {change:.2e} after "
        f"{MAX_DOUBLINGS} doublings (panels={panels})"
    )


def direct_right_integral(
    phi: Callable, alpha: float, t: float, b: float, cfg: OracleConfig = OracleConfig()
) -> float:
    """Right integral over ``[t, b]``, via the reflection ``tau -> b - tau``."""
    return direct_left_integral(lambda s: phi(b - s), alpha, b - float(t), cfg)
