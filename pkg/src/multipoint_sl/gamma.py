"""Boundary residuals of the trial solution ``sin(s x + theta)``.

Substituting ``w = sin(s x + theta)`` into a condition anchored at ``eta0``
gives::

    G = a0 sin(s eta0 + th) + s b0 cos(s eta0 + th)
        - t sum a_i sin(s eta_i + th) - t s sum b_i cos(s eta_i + th)

where ``t`` scales the multi-point coefficients along the homotopy. The
scalar functions here are used inside Newton loops; the ``*_vec`` variants
broadcast over arrays for grid scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .phase import PhaseSolution
from .problem import EndpointCondition, ProblemSpec, Side, SingleCondition

THETA_TOL = 1e-13
_SCAN_SAMPLES = 64


@dataclass(frozen=True)
class GammaGradient:
    value: float
    d_s: float
    d_theta: float
    d_t: float


def _anchor(cond: SingleCondition | EndpointCondition) -> float:
    return cond.eta0 if isinstance(cond, SingleCondition) else cond.side.endpoint


def gamma_condition(cond: SingleCondition | EndpointCondition, s: float, theta: float, t: float = 1.0) -> GammaGradient:
    """Value and exact partials of the residual for one condition (scalar inputs)."""
    eta0 = _anchor(cond)
    a0, b0 = cond.alpha0, cond.beta0
    arg = s * eta0 + theta
    sn, cs = math.sin(arg), math.cos(arg)
    value = a0 * sn + s * b0 * cs
    d_s = a0 * eta0 * cs + b0 * cs - s * b0 * eta0 * sn
    d_th = a0 * cs - s * b0 * sn
    sum_v = sum_s = sum_th = 0.0
    for eta, a, b in cond.points:
        if a == 0.0 and b == 0.0:
            continue
        arg = s * eta + theta
        sn, cs = math.sin(arg), math.cos(arg)
        sum_v += a * sn + s * b * cs
        sum_s += a * eta * cs + b * cs - s * b * eta * sn
        sum_th += a * cs - s * b * sn
    return GammaGradient(value - t * sum_v, d_s - t * sum_s, d_th - t * sum_th, -sum_v)


def gamma_condition_vec(cond: SingleCondition | EndpointCondition, s, theta, t: float = 1.0):
    """Broadcasting variant of :func:`gamma_condition`; returns (value, d_s, d_theta, d_t) arrays."""
    s = np.asarray(s, dtype=float)
    theta = np.asarray(theta, dtype=float)
    eta0 = _anchor(cond)
    a0, b0 = cond.alpha0, cond.beta0
    arg = s * eta0 + theta
    sn, cs = np.sin(arg), np.cos(arg)
    value = a0 * sn + s * b0 * cs
    d_s = a0 * eta0 * cs + b0 * cs - s * b0 * eta0 * sn
    d_th = a0 * cs - s * b0 * sn
    sum_v = np.zeros(np.broadcast(s, theta).shape)
    sum_s = np.zeros_like(sum_v)
    sum_th = np.zeros_like(sum_v)
    for eta, a, b in cond.points:
        if a == 0.0 and b == 0.0:
            continue
        arg = s * eta + theta
        sn, cs = np.sin(arg), np.cos(arg)
        sum_v = sum_v + a * sn + s * b * cs
        sum_s = sum_s + a * eta * cs + b * cs - s * b * eta * sn
        sum_th = sum_th + a * cs - s * b * sn
    return value - t * sum_v, d_s - t * sum_s, d_th - t * sum_th, -sum_v


def gamma_endpoint(side: Side | int, s: float, theta: float, spec: ProblemSpec, t: float = 1.0) -> GammaGradient:
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    return gamma_condition(spec.side(side), s, theta, t)


def gamma_pair(s: float, theta: float, spec: ProblemSpec, t: float = 1.0) -> tuple[GammaGradient, GammaGradient]:
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    return gamma_condition(spec.left, s, theta, t), gamma_condition(spec.right, s, theta, t)


def jacobian_det(s: float, theta: float, spec: ProblemSpec, t: float = 1.0) -> float:
    gm, gp = gamma_pair(s, theta, spec, t)
    return gm.d_s * gp.d_theta - gm.d_theta * gp.d_s


def sign_law(side: Side | int, s: float, theta: float, spec: ProblemSpec, t: float = 1.0) -> float:
    """``nu * G_s * G_theta`` for the condition at side ``nu``; positive at zeros of that residual."""
    g = gamma_endpoint(side, s, theta, spec, t)
    return int(Side(side)) * g.d_s * g.d_theta


def _scale(cond, s) -> float:
    return abs(cond.alpha0) + s * abs(cond.beta0) + sum(abs(p.alpha) + s * abs(p.beta) for p in cond.points)


def single_gamma_zero(cond: SingleCondition | EndpointCondition, s: float, t: float = 1.0) -> float:
    """The zero of ``theta -> G(theta)`` in ``[0, pi)``.

    ``G`` is pi-antiperiodic, so ``G(0)`` and ``G(pi)`` have opposite signs
    and a coarse scan always brackets a zero. Being of the form
    ``P sin(theta) + Q cos(theta)`` it has exactly one zero unless it
    vanishes identically, which the hypotheses exclude.
    """
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    grid = [j * math.pi / _SCAN_SAMPLES for j in range(_SCAN_SAMPLES + 1)]
    vals = [gamma_condition(cond, s, th, t).value for th in grid[:-1]]
    # antiperiodicity is exact; using it avoids rounding erasing the sign change next to pi
    vals.append(-vals[0])
    if max(abs(v) for v in vals) <= 1e-13 * _scale(cond, s):
        raise ConvergenceError(f"boundary residual vanishes identically in theta at s={s}")
    if vals[0] == 0.0:
        return 0.0
    changes = [j for j in range(_SCAN_SAMPLES) if vals[j + 1] == 0.0 or (vals[j] < 0) != (vals[j + 1] < 0)]
    if len(changes) != 1:
        raise ConvergenceError(f"{len(changes)} sign changes of the boundary residual in [0, pi) at s={s}")
    j = changes[0]
    if vals[j + 1] == 0.0:
        return grid[j + 1] if j + 1 < _SCAN_SAMPLES else 0.0
    return _bisect_theta(cond, s, t, grid[j], grid[j + 1], vals[j])


def _bisect_theta(cond, s, t, lo, hi, f_lo) -> float:
    neg_lo = f_lo < 0
    while hi - lo > THETA_TOL:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = gamma_condition(cond, s, mid, t).value
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == neg_lo:
            lo = mid
        else:
            hi = mid
    th = 0.5 * (lo + hi)
    return th % math.pi


def single_gamma_zero_vec(cond: SingleCondition | EndpointCondition, s, t: float = 1.0) -> np.ndarray:
    """Vectorised :func:`single_gamma_zero` over an array of frequencies."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s <= 0):
        raise DomainError("s must be positive")
    grid = np.linspace(0.0, math.pi, _SCAN_SAMPLES + 1)
    vals = gamma_condition_vec(cond, s[:, None], grid[None, :], t)[0]
    vals[:, -1] = -vals[:, 0]
    neg = vals < 0
    change = (neg[:, :-1] != neg[:, 1:]) | (vals[:, 1:] == 0.0)
    exact0 = vals[:, 0] == 0.0
    ok = (change.sum(axis=1) == 1) | exact0
    if not np.all(ok):
        bad = s[~ok]
        raise ConvergenceError(f"boundary residual has no unique sign change in [0, pi) at s={bad[:3]}")
    j = np.argmax(change, axis=1)
    lo = grid[j].copy()
    hi = grid[j + 1].copy()
    neg_lo = neg[np.arange(len(s)), j]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        f_mid = gamma_condition_vec(cond, s, mid, t)[0]
        go_right = (f_mid < 0) == neg_lo
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
        if np.max(hi - lo) <= THETA_TOL:
            break
    theta = 0.5 * (lo + hi)
    theta = np.where(exact0, 0.0, theta)
    return np.mod(theta, math.pi)


def transversality_check(phase: PhaseSolution, spec: ProblemSpec) -> tuple[float, float]:
    """``lambda beta0 u(+-1) - alpha0 u'(+-1)`` for each side, with ``max |u| = 1``."""
    norm = phase.sup_norm()
    out = []
    for cond in spec.sides:
        x0 = cond.side.endpoint
        arg = phase.s * x0 + phase.theta
        u, up = math.sin(arg) / norm, phase.s * math.cos(arg) / norm
        out.append(phase.lam * cond.beta0 * u - cond.alpha0 * up)
    return out[0], out[1]
