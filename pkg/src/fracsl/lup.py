"""Dense LU factorization with partial (row) pivoting.

Doolittle form: ``P @ M = L @ U`` with unit-diagonal ``L``.  Columns are
eliminated left to right; each step finishes column ``k`` of ``L`` and row
``k`` of ``U`` with two matrix-vector products against the already
factored part, so the only temporaries are vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["SingularMatrix", "LupFactors", "lup_decompose", "lup_solve", "EPS_SINGULAR"]

EPS_SINGULAR = 1e-13


class SingularMatrix(ArithmeticError):
    def __init__(self, column: int, pivot: float, threshold: float):
        self.column = column
        self.pivot = pivot
        self.threshold = threshold
        super().__init__(
            f"matrix is singular to working precision: pivot {pivot:.3e} in column "
            f"{column} is below {threshold:.3e}"
        )


@dataclass(frozen=True)
class LupFactors:
    """Packed factors: strict lower part of ``lu`` is ``L``, upper part is ``U``.

    ``perm[k]`` is the row of the original matrix that ended up in row ``k``,
    so ``M[perm] == L @ U``.
    """

    lu: np.ndarray = field(repr=False)
    perm: np.ndarray
    sign: int

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    @property
    def L(self) -> np.ndarray:
        return np.tril(self.lu, -1) + np.eye(self.n)

    @property
    def U(self) -> np.ndarray:
        return np.triu(self.lu)

    @property
    def P(self) -> np.ndarray:
        """Permutation matrix with ``P @ M == L @ U``."""
        return np.eye(self.n)[self.perm]

    def solve(self, rhs) -> np.ndarray:
        return lup_solve(self, rhs)


def lup_decompose(matrix, eps_singular: float = EPS_SINGULAR) -> LupFactors:
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    n = M.shape[0]
    a = np.array(M, dtype=float, order="C", copy=True)
    perm = np.arange(n)
    sign = 1
    threshold = eps_singular * (np.abs(M).max() if n else 0.0)

    for k in range(n):
        if k:
            a[k:, k] -= a[k:, :k] @ a[:k, k]
        p = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = a[p, k]
        if not abs(pivot) >= threshold or pivot == 0.0:
            raise SingularMatrix(k, abs(pivot), threshold)
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        if k + 1 < n:
            if k:
                a[k, k + 1 :] -= a[k, :k] @ a[:k, k + 1 :]
            a[k + 1 :, k] /= a[k, k]

    a.setflags(write=False)
    perm.setflags(write=False)
    return LupFactors(a, perm, sign)


def _substitute(factors: LupFactors, rhs: np.ndarray) -> np.ndarray:
    lu = factors.lu
    n = factors.n
    y = rhs[factors.perm].astype(float)
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1 :] @ y[i + 1 :]) / lu[i, i]
    return y


def lup_solve(factors: LupFactors, rhs, matrix=None, refine: bool = False) -> np.ndarray:
    """Forward and back substitution.

    With ``refine=True`` (``matrix`` required) one step of iterative
    refinement is applied; leave it off to reproduce plain LUP results.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape[0] != factors.n:
        raise ValueError(f"rhs has {rhs.shape[0]} rows, factors are {factors.n}x{factors.n}")
    if rhs.ndim == 2:
        return np.column_stack(
            [lup_solve(factors, rhs[:, c], matrix, refine) for c in range(rhs.shape[1])]
        )
    x = _substitute(factors, rhs)
    if refine:
        if matrix is None:
            raise ValueError("iterative refinement needs the original matrix")
        r = rhs - np.asarray(matrix, dtype=float) @ x
        x = x + _substitute(factors, r)
    return x
