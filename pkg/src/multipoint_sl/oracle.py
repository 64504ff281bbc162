"""Brute-force spectrum by scalar reduction, used as ground truth.

For each ``s`` the left condition has a unique phase ``theta^-(s)`` in
``[0, pi)``; tracking it continuously in ``s`` turns the eigenvalue problem
into finding roots of ``F(s) = G^+(s, theta^-(s))``, which are bracketed on a
grid and bisected. Nothing here depends on the continuation solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .continuation import HomotopyState, newton_correct
from .delta import coefficient_matrix
from .errors import ConvergenceError
from .gamma import (
    gamma_condition,
    gamma_condition_vec,
    gamma_pair,
    single_gamma_zero,
    single_gamma_zero_vec,
)
from .phase import TWO_PI, OscillationClass, PhaseSolution, Sign, classify_oscillation
from .problem import ProblemSpec

GRID_STEP = math.pi / 64
REFINE = 8
S_TOL = 1e-12
SLOPE_FLOOR = 1e-8
S_START = 1e-8
S_START_NEUMANN = math.pi / 512
_MAX_JUMP = math.pi / 4
_LOCAL = math.pi / 16


@dataclass(frozen=True)
class OracleRoot:
    lam: float
    phase: PhaseSolution | None  # None for the lambda = 0 constant eigenfunction
    osc: OscillationClass | None
    slope: float  # dF/ds at the root
    residuals: tuple[float, float]
    polished_lam: float

    @property
    def k(self) -> int:
        return 0 if self.osc is None else self.osc.k

    @property
    def s(self) -> float:
        return 0.0 if self.phase is None else self.phase.s


def _lift(theta: np.ndarray, ref: float) -> np.ndarray:
    """Shift each value by a multiple of pi so consecutive values stay close, starting near ``ref``."""
    out = np.empty_like(theta)
    prev = ref
    for i, th in enumerate(theta):
        th = th + math.pi * round((prev - th) / math.pi)
        out[i] = th
        prev = th
    return out


def theta_branch(spec: ProblemSpec, s_grid, ref: float | None = None) -> np.ndarray:
    """Continuous branch of left-condition phases along an increasing ``s`` grid."""
    s_grid = np.asarray(s_grid, dtype=float)
    raw = single_gamma_zero_vec(spec.left, s_grid)
    return _lift(raw, raw[0] if ref is None else ref)


def _branch_resolved(spec: ProblemSpec, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Branch on ``s``, inserting midpoints wherever the lift is ambiguous."""
    for _ in range(12):
        th = theta_branch(spec, s)
        jumps = np.abs(np.diff(th)) > _MAX_JUMP
        if not jumps.any():
            return s, th
        mids = 0.5 * (s[:-1] + s[1:])[jumps]
        s = np.sort(np.concatenate([s, mids]))
    raise ConvergenceError("left phase branch could not be resolved on the grid")


def _F(spec: ProblemSpec, s, theta):
    return gamma_condition_vec(spec.right, s, theta)[0]


def _safe_newton_theta(spec: ProblemSpec, s: float, lo: float, hi: float, f_lo: float, th: float) -> float:
    """Newton on ``theta`` from ``th``, kept inside a sign-change bracket by bisecting when a step escapes it."""
    neg_lo = f_lo < 0
    for _ in range(100):
        g = gamma_condition(spec.left, s, th)
        if g.value == 0.0:
            return th
        if (g.value < 0) == neg_lo:
            lo = th
        else:
            hi = th
        step = g.value / g.d_theta if g.d_theta else math.inf
        nxt = th - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - th) <= 4e-16 * max(1.0, abs(th)) or hi - lo <= 1e-14:
            return nxt
        th = nxt
    return th


def _theta_near(spec: ProblemSpec, s: float, ref: float) -> float:
    """Left-condition zero on the branch through ``ref``; zeros are pi apart, so a local bracket is unique."""
    lo, hi = ref - _LOCAL, ref + _LOCAL
    f_lo = gamma_condition(spec.left, s, lo).value
    f_hi = gamma_condition(spec.left, s, hi).value
    if (f_lo < 0) != (f_hi < 0):
        return _safe_newton_theta(spec, s, lo, hi, f_lo, ref)
    raw = single_gamma_zero(spec.left, s)
    return raw + math.pi * round((ref - raw) / math.pi)


def _bisect_root(spec: ProblemSpec, a: float, b: float, th_a: float, f_a: float) -> tuple[float, float]:
    neg_a = f_a < 0
    th_ref = th_a
    while b - a > S_TOL:
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        th_m = _theta_near(spec, m, th_ref)
        f_m = gamma_condition(spec.right, m, th_m).value
        if f_m == 0.0:
            return m, th_m
        if (f_m < 0) == neg_a:
            a, th_ref = m, th_m
        else:
            b = m
    s = 0.5 * (a + b)
    return s, _theta_near(spec, s, th_ref)


def _brackets(spec: ProblemSpec, s: np.ndarray, th: np.ndarray, f: np.ndarray):
    """Sign-change intervals of F, with local x8 refinement around minima of |F|."""
    out = []
    absf = np.abs(f)
    suspicious = set()
    for i in range(1, len(f) - 1):
        if absf[i] <= absf[i - 1] and absf[i] <= absf[i + 1]:
            suspicious.update((i - 1, i))
    for i in range(len(f) - 1):
        if f[i] == 0.0:
            out.append((s[i], s[i], th[i], f[i]))
            continue
        if (f[i] < 0) != (f[i + 1] < 0) and f[i + 1] != 0.0:
            out.append((s[i], s[i + 1], th[i], f[i]))
            continue
        if i in suspicious and f[i + 1] != 0.0:
            sub = np.linspace(s[i], s[i + 1], REFINE + 1)
            sub_th = theta_branch(spec, sub, ref=th[i])
            sub_f = _F(spec, sub, sub_th)
            for j in range(REFINE):
                if sub_f[j] == 0.0 and j > 0:
                    out.append((sub[j], sub[j], sub_th[j], sub_f[j]))
                elif (sub_f[j] < 0) != (sub_f[j + 1] < 0) and sub_f[j + 1] != 0.0:
                    out.append((sub[j], sub[j + 1], sub_th[j], sub_f[j]))
    if len(f) and f[-1] == 0.0:
        out.append((s[-1], s[-1], th[-1], f[-1]))
    return out


def zero_is_eigenvalue(spec: ProblemSpec) -> bool:
    """lambda = 0 is an eigenvalue iff ``c0 + c1 x`` can satisfy both conditions non-trivially."""
    mat = coefficient_matrix(spec)
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    return abs(det) <= 1e-14 * max(1.0, float(np.abs(mat).max()) ** 2)


def slope(spec: ProblemSpec, s: float, theta: float) -> float:
    """``dF/ds = -J / G^-_theta`` along the left branch."""
    gm, gp = gamma_pair(s, theta, spec)
    det = gm.d_s * gp.d_theta - gm.d_theta * gp.d_s
    return -det / gm.d_theta


def oracle_spectrum(spec: ProblemSpec, s_max: float, s_min: float | None = None) -> list[OracleRoot]:
    """All eigenvalues with ``sqrt(lambda)`` in ``(0, s_max]``, plus ``lambda = 0`` when it occurs.

    With ``s_min`` only the window ``[s_min, s_max]`` is scanned and ``lambda = 0`` is not considered.
    """
    roots: list[OracleRoot] = []
    if s_min is not None:
        if not 0 < s_min < s_max:
            raise ValueError(f"need 0 < s_min < s_max, got {s_min}, {s_max}")
        start = s_min
    elif zero_is_eigenvalue(spec):
        roots.append(OracleRoot(0.0, None, None, 0.0, (0.0, 0.0), 0.0))
        start = S_START_NEUMANN
    else:
        start = S_START
    n = max(2, int(math.ceil((s_max - start) / GRID_STEP)) + 1)
    s = np.linspace(start, s_max, n)
    s, th = _branch_resolved(spec, s)
    f = _F(spec, s, th)

    for a, b, th_a, f_a in _brackets(spec, s, th, f):
        if a == b:
            s_root, th_root = a, th_a
        else:
            s_root, th_root = _bisect_root(spec, a, b, th_a, f_a)
        phase = PhaseSolution(s_root, th_root % TWO_PI)
        osc = classify_oscillation(phase, spec)
        if osc is not None and osc.sign is Sign.MINUS:
            phase = PhaseSolution(s_root, (phase.theta + math.pi) % TWO_PI)
            osc = classify_oscillation(phase, spec)
        polished = newton_correct(HomotopyState(t=1.0, phase=phase), spec)
        gm, gp = gamma_pair(polished.s, polished.theta, spec)
        roots.append(
            OracleRoot(
                lam=s_root * s_root,
                phase=phase,
                osc=osc,
                slope=slope(spec, s_root, th_root),
                residuals=(gm.value, gp.value),
                polished_lam=polished.lam,
            )
        )
    return roots
