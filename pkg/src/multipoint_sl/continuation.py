"""Homotopy from the separated problem to the full multi-point problem.

The multi-point coefficients are scaled by ``t`` in ``[0, 1]``; for each
index ``k`` the separated eigenphase at ``t = 0`` is followed to ``t = 1``
with an Euler predictor and a two-dimensional Newton corrector, while the
oscillation class ``(k, Plus)`` is required to stay fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClassJump,
    InadmissibleSpec,
    NoConvergence,
    PathFailure,
    SingularJacobian,
)
from .gamma import gamma_pair, transversality_check
from .phase import TWO_PI, OscillationClass, PhaseSolution, Sign, classify_oscillation
from .problem import ProblemSpec, validate
from .separated import separated_eigen


NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 25
JAC_FLOOR = 1e-10
STEP_INIT = 0.05
STEP_MIN = 1e-6
STEP_MAX = 0.1
S_FLOOR = 1e-6


@dataclass
class HomotopyState:
    t: float
    phase: PhaseSolution
    step: float = STEP_INIT
    k: int = 0
    trace: list[tuple[float, float, float]] = field(default_factory=list)


@dataclass(frozen=True)
class Eigenpair:
    k: int
    lam: float
    phase: PhaseSolution | None  # None marks the constant Neumann ground state
    osc: OscillationClass | None
    residuals: tuple[float, float]
    transversality: tuple[float, float] | None
    trace: tuple[tuple[float, float, float], ...] = ()

    @property
    def is_constant(self) -> bool:
        return self.phase is None

    @property
    def s(self) -> float:
        return 0.0 if self.phase is None else self.phase.s

    def u(self, x):
        """Eigenfunction normalised to ``max |u| = 1`` on ``[-1, 1]``."""
        x = np.asarray(x, dtype=float)
        if self.phase is None:
            return np.ones_like(x)
        return self.phase.u(x) / self.phase.sup_norm()

    def uprime(self, x):
        x = np.asarray(x, dtype=float)
        if self.phase is None:
            return np.zeros_like(x)
        return self.phase.uprime(x) / self.phase.sup_norm()


def _residual_norm(gm, gp) -> float:
    return max(abs(gm.value), abs(gp.value))


def newton_correct(
    state: HomotopyState,
    spec: ProblemSpec,
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
    history: list[float] | None = None,
) -> PhaseSolution:
    """Solve both boundary residuals ``= 0`` at ``state.t`` starting from ``state.phase``."""
    s, th, t = state.phase.s, state.phase.theta, state.t
    for it in range(max_iter + 1):
        gm, gp = gamma_pair(s, th, spec, t)
        res = _residual_norm(gm, gp)
        if history is not None:
            history.append(res)
        if res <= tol:
            return PhaseSolution(s, th)
        if it == max_iter:
            break
        det = gm.d_s * gp.d_theta - gm.d_theta * gp.d_s
        if abs(det) < JAC_FLOOR:
            raise SingularJacobian(f"|J|={abs(det):.3e} at s={s}, theta={th}, t={t}")
        ds = (-gm.value * gp.d_theta + gp.value * gm.d_theta) / det
        dth = (-gp.value * gm.d_s + gm.value * gp.d_s) / det
        s_new = s + ds
        if not s_new > 0:
            s_new = 0.5 * s
        # rounding floor: the update no longer moves the iterate
        if abs(ds) <= 4e-16 * s and abs(dth) <= 4e-16 * max(1.0, abs(th)) and res <= 1e3 * tol:
            return PhaseSolution(s, th)
        s, th = s_new, th + dth
    raise NoConvergence(f"Newton did not reach {tol:g} in {max_iter} iterations (residual {res:.3e})")


def _tangent(s: float, th: float, spec: ProblemSpec, t: float) -> tuple[float, float]:
    gm, gp = gamma_pair(s, th, spec, t)
    det = gm.d_s * gp.d_theta - gm.d_theta * gp.d_s
    if abs(det) < JAC_FLOOR:
        raise SingularJacobian(f"|J|={abs(det):.3e} at s={s}, theta={th}, t={t}")
    # J (ds, dth) = -(G-_t, G+_t)
    ds = (-gm.d_t * gp.d_theta + gp.d_t * gm.d_theta) / det
    dth = (-gp.d_t * gm.d_s + gm.d_t * gp.d_s) / det
    return ds, dth


def _make_pair(k: int, phase: PhaseSolution, spec: ProblemSpec, trace=()) -> Eigenpair:
    phase = phase.normalized()
    osc = classify_oscillation(phase, spec)
    if osc is not None and osc.sign is Sign.MINUS:
        phase = PhaseSolution(phase.s, (phase.theta + math.pi) % TWO_PI)
        osc = classify_oscillation(phase, spec)
    gm, gp = gamma_pair(phase.s, phase.theta, spec)
    return Eigenpair(
        k=k,
        lam=phase.lam,
        phase=phase,
        osc=osc,
        residuals=(gm.value, gp.value),
        transversality=transversality_check(phase, spec),
        trace=tuple(trace),
    )


def _constant_pair(spec: ProblemSpec) -> Eigenpair:
    return Eigenpair(k=0, lam=0.0, phase=None, osc=None, residuals=(0.0, 0.0), transversality=None)


def _require_admissible(spec: ProblemSpec) -> None:
    report = validate(spec)
    if not report.admissible:
        raise InadmissibleSpec("spec violates the standing hypotheses", report)


def continue_eigenpair(spec: ProblemSpec, k: int, *, check: bool = True) -> Eigenpair:
    """Follow the separated eigenphase of index ``k`` to the full problem."""
    if check:
        _require_admissible(spec)
    seed = separated_eigen(spec.separated_part(), k)
    if seed.is_constant:
        return _constant_pair(spec)
    phase = seed.phase
    if spec.is_separated:
        return _make_pair(k, phase, spec, [(1.0, phase.s, phase.theta)])

    s_cap = phase.s + (k + 4) * math.pi
    state = HomotopyState(t=0.0, phase=phase, step=STEP_INIT, k=k, trace=[(0.0, phase.s, phase.theta)])

    while state.t < 1.0:
        h = min(state.step, 1.0 - state.t)
        s0, th0 = state.phase.s, state.phase.theta
        ds, dth = _tangent(s0, th0, spec, state.t)
        t_new = 1.0 if state.t + h >= 1.0 - 1e-14 else state.t + h
        pred_s = s0 + (t_new - state.t) * ds
        if not pred_s > 0:
            pred_s = 0.5 * s0
        trial = HomotopyState(t=t_new, phase=PhaseSolution(pred_s, th0 + (t_new - state.t) * dth))
        iters: list[float] = []
        failure = None
        try:
            new_phase = newton_correct(trial, spec, history=iters)
        except (NoConvergence, SingularJacobian) as exc:
            failure = exc
        else:
            osc = classify_oscillation(new_phase, spec)
            if osc is None or osc.k != k or osc.sign is not Sign.PLUS:
                failure = ClassJump(f"class changed to {osc} at t={t_new}", k=k, t=t_new)

        if failure is not None:
            if h <= STEP_MIN:
                if isinstance(failure, ClassJump):
                    raise failure
                raise PathFailure(f"k={k}: step underflow at t={state.t:.6g} ({failure})", k=k, t=state.t)
            state.step = max(h / 2, STEP_MIN)
            continue

        if not (S_FLOOR <= new_phase.s <= s_cap):
            raise PathFailure(f"k={k}: s={new_phase.s} left [{S_FLOOR}, {s_cap}] at t={t_new}", k=k, t=t_new)
        state.t = t_new
        state.phase = new_phase
        state.trace.append((t_new, new_phase.s, new_phase.theta))
        if len(iters) <= 4:
            state.step = min(h * 1.5, STEP_MAX)
    return _make_pair(k, state.phase, spec, state.trace)


def solve_spectrum(spec: ProblemSpec, k_max: int, *, check: bool = True) -> list[Eigenpair]:
    if check:
        _require_admissible(spec)
    pairs = []
    for k in range(k_max + 1):
        try:
            pairs.append(continue_eigenpair(spec, k, check=False))
        except (PathFailure, ClassJump, SingularJacobian, NoConvergence) as exc:
            raise type(exc)(f"k={k}: {exc}") from exc
    return pairs
