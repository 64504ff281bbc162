"""Separated problem (all multi-point coefficients zero): seeds for continuation."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import BracketError
from .phase import TWO_PI, PhaseSolution, target_angles_s
from .problem import ProblemSpec

S_FLOOR = 1e-8


@dataclass(frozen=True)
class SeparatedEigen:
    k: int
    lam: float
    phase: PhaseSolution | None  # None for the constant eigenfunction (lambda = 0)

    @property
    def is_constant(self) -> bool:
        return self.phase is None

    @property
    def theta_mod_pi(self) -> float | None:
        """Representative of the phase in ``[0, pi)`` (defines the same eigenspace)."""
        return None if self.phase is None else self.phase.theta % math.pi


def angle_gap(s: float, spec: ProblemSpec, k: int) -> float:
    """``omega^-(s) + 2 s - omega^+(s) - k pi``; strictly increasing in ``s``."""
    om_minus, om_plus = target_angles_s(s, spec)
    return om_minus + 2.0 * s - om_plus - k * math.pi


def separated_eigen(spec: ProblemSpec, k: int) -> SeparatedEigen:
    """Eigenpair ``k`` of the separated part of ``spec``.

    The returned phase is the representative lying in ``P_k^+`` (theta in
    ``[0, 2 pi)``); reduce it mod pi for the unique phase in ``[0, pi)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0 and spec.left.alpha0 == 0.0 and spec.right.alpha0 == 0.0:
        return SeparatedEigen(0, 0.0, None)

    lo = max(S_FLOOR, k * math.pi / 2 - math.pi)
    hi = k * math.pi / 2 + 2 * math.pi
    g_lo, g_hi = angle_gap(lo, spec, k), angle_gap(hi, spec, k)
    if not (g_lo < 0 < g_hi):
        raise BracketError(f"separated angle equation for k={k} has no sign change on [{lo}, {hi}]")
    s = brentq(angle_gap, lo, hi, args=(spec, k), xtol=1e-15, rtol=8.9e-16, maxiter=200)
    om_minus, _ = target_angles_s(s, spec)
    theta = (om_minus + s) % TWO_PI
    return SeparatedEigen(k, s * s, PhaseSolution(s, theta))
