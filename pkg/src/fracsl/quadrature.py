"""Trapezoid-type weights for the left and right Riemann-Liouville integrals.

On a uniform grid the left integral of order ``alpha`` at ``t_i`` is
approximated by ``sum_j w[i, j] * phi[j]`` where, with
``c = dt**alpha / (2 * Gamma(alpha + 1))``::

    w[0, 0] = 0
    w[i, 0] = c * (i**alpha - (i - 1)**alpha)                  i > 0
    w[i, j] = c * ((i - j + 1)**alpha - (i - j - 1)**alpha)    0 < j < i
    w[i, i] = c                                                i > 0

The right integral uses the mirrored table ``v[i, j] = w[n - i, n - j]``.
Apart from the first column, ``w`` depends only on the lag ``i - j``, so a
:class:`WeightSet` keeps two 1-D arrays and expands them on request.

Weights are formed in extended precision and rounded to float64 once.  The
integer power differences are exact (Sterbenz), so each stored weight is
the correctly rounded value for the given Gamma(alpha + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import UniformGrid

__all__ = [
    "WeightSet",
    "make_weights",
    "left_weight",
    "right_weight",
    "apply_left_integral",
    "apply_right_integral",
    "composition_matrix",
]

_XF = np.longdouble


def _powers(m, alpha: float) -> np.ndarray:
    # m >= 0 integers; 0**alpha == 0 for alpha > 0
    return np.power(np.asarray(m, dtype=_XF), _XF(alpha))


def _scale(alpha: float, dt: float):
    return np.power(_XF(dt), _XF(alpha)) / (_XF(2) * _XF(math.gamma(alpha + 1.0)))


def _check_alpha(alpha: float):
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")


def _unit_left(i: int, j: int, alpha: float):
    if i == 0:
        return _XF(0)
    if j == i:
        return _XF(1)
    if j == 0:
        p = _powers([i - 1, i], alpha)
    else:
        p = _powers([i - j - 1, i - j + 1], alpha)
    return p[1] - p[0]


def left_weight(i: int, j: int, alpha: float, dt: float) -> float:
    """Single entry ``w[i, j]`` of the left-integral table (``0 <= j <= i``)."""
    if not (0 <= j <= i):
        raise IndexError(f"left weight needs 0 <= j <= i, got i={i}, j={j}")
    _check_alpha(alpha)
    return float(_scale(alpha, dt) * _unit_left(i, j, alpha))


def right_weight(i: int, j: int, alpha: float, dt: float, n: int) -> float:
    """Single entry ``v[i, j]`` of the right-integral table (``0 <= i <= j <= n``)."""
    if not (0 <= i <= j <= n):
        raise IndexError(f"right weight needs 0 <= i <= j <= n, got i={i}, j={j}, n={n}")
    _check_alpha(alpha)
    if i == n:
        unit = _XF(0)
    elif j == i:
        unit = _XF(1)
    elif j == n:
        p = _powers([n - i - 1, n - i], alpha)
        unit = p[1] - p[0]
    else:
        p = _powers([j - i - 1, j - i + 1], alpha)
        unit = p[1] - p[0]
    return float(_scale(alpha, dt) * unit)


@dataclass(frozen=True)
class WeightSet:
    """Weights for one ``(alpha, grid)`` pair.

    ``lag[m]`` is the interior weight for lag ``m = i - j`` (``lag[0]`` is
    the diagonal weight, equal to ``scale``) and ``first[i]`` is ``w[i, 0]``.
    """

    alpha: float
    grid: UniformGrid
    scale: float = field(init=False)
    gamma: float = field(init=False)
    lag: np.ndarray = field(init=False, repr=False)
    first: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_alpha(self.alpha)
        n = self.grid.n
        c = _scale(self.alpha, self.grid.dt)
        p = _powers(np.arange(n + 2), self.alpha)
        unit_lag = np.empty(n + 1, dtype=_XF)
        unit_lag[0] = 1
        unit_lag[1:] = p[2:] - p[:-2]
        unit_first = np.empty(n + 1, dtype=_XF)
        unit_first[0] = 0
        unit_first[1:] = p[1:-1] - p[:-2]
        lag = (c * unit_lag).astype(float)
        first = (c * unit_first).astype(float)
        for arr in (lag, first):
            arr.setflags(write=False)
        object.__setattr__(self, "scale", float(c))
        object.__setattr__(self, "gamma", math.gamma(self.alpha + 1.0))
        object.__setattr__(self, "lag", lag)
        object.__setattr__(self, "first", first)

    @property
    def n(self) -> int:
        return self.grid.n

    def left(self, i: int, j: int) -> float:
        if not (0 <= j <= i <= self.n):
            raise IndexError(f"left weight needs 0 <= j <= i <= n, got i={i}, j={j}")
        if i == 0:
            return 0.0
        return float(self.first[i] if j == 0 else self.lag[i - j])

    def right(self, i: int, j: int) -> float:
        n = self.n
        if not (0 <= i <= j <= n):
            raise IndexError(f"right weight needs 0 <= i <= j <= n, got i={i}, j={j}")
        return self.left(n - i, n - j)

    def left_matrix(self) -> np.ndarray:
        """Dense lower-triangular ``(n+1, n+1)`` table of ``w``."""
        n = self.n
        W = np.zeros((n + 1, n + 1))
        rev = self.lag[::-1]  # rev[n - m] == lag[m]
        for i in range(1, n + 1):
            W[i, 1 : i + 1] = rev[n - i + 1 :]
            W[i, 0] = self.first[i]
        return W

    def right_matrix(self) -> np.ndarray:
        """Dense upper-triangular ``(n+1, n+1)`` table of ``v``."""
        return np.ascontiguousarray(self.left_matrix()[::-1, ::-1])


def make_weights(alpha: float, grid: UniformGrid) -> WeightSet:
    return WeightSet(float(alpha), grid)


def _check_length(phi, ws: WeightSet) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (ws.n + 1,):
        raise ValueError(f"expected {ws.n + 1} node values, got shape {phi.shape}")
    return phi


def apply_left_integral(phi, ws: WeightSet) -> np.ndarray:
    """Discrete left integral: ``g[i] = sum_{j <= i} w[i, j] * phi[j]``."""
    phi = _check_length(phi, ws)
    n = ws.n
    rev = ws.lag[::-1]
    g = np.zeros(n + 1)
    for i in range(1, n + 1):
        g[i] = ws.first[i] * phi[0] + rev[n - i + 1 :] @ phi[1 : i + 1]
    return g


def apply_right_integral(phi, ws: WeightSet) -> np.ndarray:
    """Discrete right integral: ``g[i] = sum_{j >= i} v[i, j] * phi[j]``."""
    phi = _check_length(phi, ws)
    return apply_left_integral(phi[::-1], ws)[::-1].copy()


def composition_matrix(ws: WeightSet) -> np.ndarray:
    """Matrix ``A = W @ V`` of the left integral applied after the right one.

    ``A[i, k] = sum_{j <= min(i, k)} w[i, j] * v[j, k]``; row 0 is zero.
    """
    W = ws.left_matrix()
    V = np.ascontiguousarray(W[::-1, ::-1])
    return W @ V
