"""Trial solutions ``sin(s x + theta)`` and their modified Pruefer angles.

For ``-u'' = s^2 u`` the angle of the vector ``(u', s u)`` grows at the
constant rate ``s``, so every quantity here has a closed form and no ODE
integration is needed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .problem import ProblemSpec

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class PhaseSolution:
    """``w(x) = sin(s x + theta)`` with eigenvalue parameter ``lambda = s**2``."""

    s: float
    theta: float

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"frequency s must be positive, got {self.s}")

    @property
    def lam(self) -> float:
        return self.s * self.s

    def flipped(self) -> PhaseSolution:
        """The phase of ``-w``."""
        return PhaseSolution(self.s, self.theta + math.pi)

    def normalized(self) -> PhaseSolution:
        """Same function with theta reduced to ``[0, 2 pi)``."""
        return PhaseSolution(self.s, self.theta % TWO_PI)

    def u(self, x):
        return np.sin(self.s * np.asarray(x, dtype=float) + self.theta)

    def uprime(self, x):
        return self.s * np.cos(self.s * np.asarray(x, dtype=float) + self.theta)

    def sup_norm(self) -> float:
        """``max |w|`` over ``[-1, 1]``, exact."""
        lo, hi = self.theta - self.s, self.theta + self.s
        # a crest of |sin| lies inside the argument range
        n = math.ceil((lo - HALF_PI) / math.pi)
        if n * math.pi + HALF_PI <= hi:
            return 1.0
        return max(abs(math.sin(lo)), abs(math.sin(hi)))


class Sign(str, enum.Enum):
    PLUS = "Plus"
    MINUS = "Minus"

    def toggled(self) -> Sign:
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


@dataclass(frozen=True)
class OscillationClass:
    k: int
    sign: Sign
    boundary_margin: float


def eval_w(phase: PhaseSolution, x: float) -> tuple[float, float]:
    arg = phase.s * x + phase.theta
    return math.sin(arg), phase.s * math.cos(arg)


def left_angle(phase: PhaseSolution) -> float:
    """Oriented angle of ``(w'(-1), s w(-1))`` pinned to ``[0, 2 pi)``.

    That vector is ``s (cos(theta - s), sin(theta - s))``, so the angle is
    ``theta - s`` reduced mod ``2 pi``.
    """
    a = (phase.theta - phase.s) % TWO_PI
    return 0.0 if a == TWO_PI else a


def prufer_angle(phase: PhaseSolution, x):
    """Continuous oriented Pruefer angle of ``w``, exactly affine in ``x``."""
    return left_angle(phase) + phase.s * (np.asarray(x, dtype=float) + 1.0)


def target_angles(lam: float, spec: ProblemSpec) -> tuple[float, float]:
    """Endpoint angles of the separated parts, in ``[0, pi/2]`` and ``[pi/2, pi]``."""
    if not lam > 0:
        raise DomainError(f"target angles need lambda > 0, got {lam}")
    return target_angles_s(math.sqrt(lam), spec)


def target_angles_s(s: float, spec: ProblemSpec) -> tuple[float, float]:
    left, right = spec.left, spec.right
    # angle of (alpha0, -s beta0); alpha0 = 0 gives exactly +-pi/2 from atan2
    om_minus = math.atan2(-s * left.beta0, left.alpha0)
    om_plus = math.atan2(-s * right.beta0, right.alpha0) + math.pi
    om_minus = min(max(om_minus, 0.0), HALF_PI)
    om_plus = min(max(om_plus, HALF_PI), math.pi)
    return om_minus, om_plus


def classify_oscillation(phase: PhaseSolution, spec: ProblemSpec) -> OscillationClass | None:
    """Locate ``(s^2, w)`` in a class ``P_k^+`` or ``P_k^-``; ``None`` if it fits no class."""
    om_minus, om_plus = target_angles_s(phase.s, spec)
    # pick the sign of w whose left angle lies in [om_minus - pi/2, om_minus + pi/2)
    low = om_minus - HALF_PI
    start = low + (left_angle(phase) - low) % TWO_PI
    sign = Sign.PLUS
    if start >= om_minus + HALF_PI:
        start -= math.pi
        sign = Sign.MINUS
    end = start + 2.0 * phase.s
    k = round((end - om_plus) / math.pi)
    if k < 0:
        return None
    margin = min(HALF_PI - abs(start - om_minus), HALF_PI - abs(end - om_plus - k * math.pi))
    if not margin > 0:
        return None
    return OscillationClass(int(k), sign, margin)


def count_interior_zeros(phase: PhaseSolution, of_derivative: bool = False, tol: float = 1e-12) -> int:
    """Zeros of ``w`` (or ``w'``) in the open interval ``(-1, 1)``.

    Zeros of ``sin`` sit at arguments ``n pi``; those of ``cos`` at
    ``n pi + pi/2``. Arguments within ``tol`` of an endpoint are not counted.
    """
    shift = HALF_PI if of_derivative else 0.0
    lo = (phase.theta - phase.s - shift) / math.pi
    hi = (phase.theta + phase.s - shift) / math.pi
    eps = tol / math.pi
    n_min = math.floor(lo) + 1
    if n_min - lo <= eps:
        n_min += 1
    n_max = math.ceil(hi) - 1
    if hi - n_max <= eps:
        n_max -= 1
    return max(0, n_max - n_min + 1)
