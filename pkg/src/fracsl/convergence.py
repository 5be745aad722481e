"""Grid-refinement studies and empirical convergence rates.

Given values of the solution at one physical point on grids with steps
``2*dt``, ``dt`` and ``dt/2``, the observed order at ``dt`` is::

    p = log2((f(dt) - f(2*dt)) / (f(dt/2) - f(dt)))
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .assembly import solve
from .grid import DomainError, ProblemSpec

__all__ = [
    "DegenerateLadder",
    "ConvergenceRecord",
    "rate_from_ladder",
    "run_study",
    "check_n_list",
    "DEFAULT_PROBES",
]

DEFAULT_PROBES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
DEGENERATE_RTOL = 1e-15


class DegenerateLadder(ArithmeticError):
    def __init__(self, level: int, numerator: float, denominator: float):
        self.level = level
        self.numerator = numerator
        self.denominator = denominator
        super().__init__(
            f"rate undefined at ladder level {level}: successive difference "
            f"{denominator!r} is zero to working precision"
        )


class StudyError(RuntimeError):
    """A solve inside a study failed; ``n`` names the grid, ``__cause__`` the reason."""

    def __init__(self, n: int, cause: Exception):
        self.n = n
        super().__init__(f"solve failed at n={n}: {cause}")


def rate_from_ladder(values: Sequence[float]) -> list:
    """Observed orders for a ladder of values over successively halved steps.

    Returns ``len(values) - 2`` rates; entry ``k`` belongs to level ``k + 1``.
    """
    f = [float(v) for v in values]
    if len(f) < 3:
        raise ValueError(f"need at least three ladder values, got {len(f)}")
    rates = []
    for k in range(1, len(f) - 1):
        num = f[k] - f[k - 1]
        den = f[k + 1] - f[k]
        scale = max(abs(f[k - 1]), abs(f[k]), abs(f[k + 1]))
        if den == 0.0 or abs(den) < DEGENERATE_RTOL * scale:
            raise DegenerateLadder(k, num, den)
        ratio = num / den
        rates.append(math.log2(ratio) if ratio > 0 else math.nan)
    return rates


@dataclass(frozen=True)
class ConvergenceRecord:
    probe: Fraction
    ladder: tuple  # ((dt, f), ...) with dt halving
    rates: tuple  # one per interior ladder level; may be empty

    @property
    def dts(self) -> tuple:
        return tuple(dt for dt, _ in self.ladder)

    @property
    def values(self) -> tuple:
        return tuple(v for _, v in self.ladder)

    @property
    def ratios(self) -> tuple:
        f = self.values
        return tuple((f[k] - f[k - 1]) / (f[k + 1] - f[k]) for k in range(1, len(f) - 1))

    def rate_at(self, dt: float) -> Optional[float]:
        """Rate reported beside ``dt`` (the middle of its three levels), or ``None``."""
        for k, (d, _) in enumerate(self.ladder):
            if d == dt:
                if 1 <= k <= len(self.rates):
                    return self.rates[k - 1]
                return None
        raise KeyError(dt)


def check_n_list(n_list: Sequence[int], probes: Sequence = DEFAULT_PROBES) -> list:
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise DomainError("empty n-list")
    for a, b in zip(n_list, n_list[1:]):
        if b != 2 * a:
            raise DomainError(f"n-list must double at each step; {a} is followed by {b}")
    for n in n_list:
        for probe in probes:
            if (Fraction(probe) * n).denominator != 1:
                raise DomainError(f"n={n} has no node at probe {Fraction(probe)}")
    return n_list


def _default_workers() -> int:
    env = os.environ.get("FRACSL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"FRACSL_THREADS must be a positive integer, got {env!r}") from None
    return 1


def run_study(
    spec: ProblemSpec,
    n_list: Sequence[int],
    probes: Sequence = DEFAULT_PROBES,
    workers: Optional[int] = None,
    strict: bool = True,
) -> list:
    """Solve at every ``n`` and build one :class:`ConvergenceRecord` per probe.

    Each level is an independent solve.  With ``strict=False`` a degenerate
    ladder yields NaN rates instead of raising.
    """
    probes = [Fraction(p) for p in probes]
    n_list = check_n_list(n_list, probes)
    workers = _default_workers() if workers is None else max(1, int(workers))

    def one(n):
        try:
            return solve(spec, n)
        except (ArithmeticError, ValueError) as exc:
            raise StudyError(n, exc) from exc

    if workers > 1 and len(n_list) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solutions = list(pool.map(one, n_list))
    else:
        solutions = [one(n) for n in n_list]

    records = []
    for probe in probes:
        ladder = tuple((sol.grid.dt, sol.at(probe)) for sol in solutions)
        if len(ladder) >= 3:
            try:
                rates = tuple(rate_from_ladder([v for _, v in ladder]))
            except DegenerateLadder:
                if strict:
                    raise
                rates = tuple(math.nan for _ in ladder[2:])
        else:
            rates = ()
        records.append(ConvergenceRecord(probe, ladder, rates))
    return records
