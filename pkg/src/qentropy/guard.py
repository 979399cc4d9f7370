"""Grid-convergence check: rerun a computation at twice the resolution."""

from __future__ import annotations

import warnings
from typing import Callable, NamedTuple

from .grid import GridSpec

GUARD_TOLERANCE = 1e-3


class ConvergenceWarning(UserWarning):
    pass


class GuardResult(NamedTuple):
    value: float
    refined_value: float
    delta: float
    ok: bool

    def as_dict(self) -> dict:
        return {"value": self.value, "refined_value": self.refined_value,
                "delta": self.delta, "ok": self.ok, "tolerance": GUARD_TOLERANCE}


def check_convergence(compute: Callable[[GridSpec], float], grid: GridSpec,
                      tol: float = GUARD_TOLERANCE, warn: bool = True) -> GuardResult:
    """Evaluate ``compute`` on ``grid`` and on the grid with 2N points.

    Emits ``ConvergenceWarning`` when the two differ by more than ``tol``.
    """
    a = float(compute(grid))
    b = float(compute(grid.refined(2)))
    res = GuardResult(a, b, abs(a - b), abs(a - b) <= tol)
    if warn and not res.ok:
        warnings.warn(f"entropy not converged: |S(N) - S(2N)| = {res.delta:.3g} > {tol:g}",
                      ConvergenceWarning, stacklevel=2)
    return res
