"""Inverse of ``u -> u''`` on functions satisfying both multi-point conditions.

A particular solution ``v(x) = int_{-1}^{x} (x - tau) h(tau) dtau`` has
``v(-1) = v'(-1) = 0``; adding ``c0 + c1 x`` and imposing the two boundary
conditions gives a 2x2 system for ``(c0, c1)`` that is non-singular whenever
``alpha0^- + alpha0^+ > 0``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import NeumannCase, SingularSystem
from .problem import ProblemSpec, Side

QUAD_TOL = 1e-11
DET_FLOOR = 1e-12


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = QUAD_TOL, max_depth: int = 40) -> float:
    """Adaptive Simpson quadrature with Richardson correction."""
    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _simpson_rec(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


@dataclass(frozen=True)
class SampledFunction:
    """A function on ``[-1, 1]``, given as a callable or as uniform samples."""

    func: Callable[[float], float]
    deriv: Callable[[float], float] | None = None

    def __call__(self, x: float) -> float:
        return float(self.func(x))

    def derivative(self, x: float) -> float:
        if self.deriv is None:
            raise AttributeError("no derivative attached")
        return float(self.deriv(x))

    def sample(self, n: int = 401) -> tuple[np.ndarray, np.ndarray]:
        xs = np.linspace(-1.0, 1.0, n)
        return xs, np.array([self(x) for x in xs])

    @classmethod
    def from_samples(cls, values: Sequence[float]) -> SampledFunction:
        values = np.asarray(values, dtype=float)
        n = len(values)
        if n < 201 or n % 2 == 0:
            raise ValueError(f"need an odd number of samples >= 201, got {n}")
        spline = CubicSpline(np.linspace(-1.0, 1.0, n), values)
        d1 = spline.derivative()
        return cls(lambda x: float(spline(x)), lambda x: float(d1(x)))


@dataclass(frozen=True)
class InverseSolution(SampledFunction):
    c0: float = 0.0
    c1: float = 0.0


class _Primitive:
    """Cumulative integrals ``A(x) = int h`` and ``B(x) = int tau h`` from ``-1``."""

    def __init__(self, h: Callable[[float], float], n_knots: int, tol: float):
        self.h = h
        self.knots = [-1.0 + 2.0 * j / (n_knots - 1) for j in range(n_knots)]
        self.knots[-1] = 1.0
        self.piece_tol = tol / (n_knots - 1)
        th = lambda x: x * h(x)  # noqa: E731
        self.th = th
        A, B = [0.0], [0.0]
        for a, b in zip(self.knots[:-1], self.knots[1:]):
            A.append(A[-1] + adaptive_simpson(h, a, b, self.piece_tol))
            B.append(B[-1] + adaptive_simpson(th, a, b, self.piece_tol))
        self.A, self.B = A, B

    def __call__(self, x: float) -> tuple[float, float]:
        j = bisect.bisect_right(self.knots, x) - 1
        j = min(max(j, 0), len(self.knots) - 1)
        x0 = self.knots[j]
        if x == x0:
            return self.A[j], self.B[j]
        return (
            self.A[j] + adaptive_simpson(self.h, x0, x, self.piece_tol),
            self.B[j] + adaptive_simpson(self.th, x0, x, self.piece_tol),
        )


def coefficient_matrix(spec: ProblemSpec) -> np.ndarray:
    """Rows ``(A, B)`` per side from substituting ``c0 + c1 x`` into the conditions."""
    rows = []
    for cond in spec.sides:
        nu = int(cond.side)
        a = cond.alpha0 - math.fsum(p.alpha for p in cond.points)
        b = cond.beta0 - math.fsum(p.beta for p in cond.points) + nu * cond.alpha0 - math.fsum(
            p.alpha * p.eta for p in cond.points
        )
        rows.append((a, b))
    return np.array(rows)


def apply_inverse(
    h: Callable[[float], float] | SampledFunction,
    spec: ProblemSpec,
    tol: float = QUAD_TOL,
    n_knots: int = 401,
) -> InverseSolution:
    """Solve ``u'' = h`` with both boundary conditions."""
    if not spec.left.alpha0 + spec.right.alpha0 > 0:
        raise NeumannCase("alpha0^- + alpha0^+ = 0: constants lie in the kernel")
    mat = coefficient_matrix(spec)
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    if abs(det) < DET_FLOOR:
        raise SingularSystem(f"coefficient determinant {det:.3e}")

    prim = _Primitive(h, n_knots, tol)

    def v(x):
        A, B = prim(x)
        return x * A - B

    def vp(x):
        return prim(x)[0]

    rhs = []
    for cond in spec.sides:
        x0 = float(Side(cond.side))
        r = cond.alpha0 * v(x0) + cond.beta0 * vp(x0)
        for p in cond.points:
            if p.alpha:
                r -= p.alpha * v(p.eta)
            if p.beta:
                r -= p.beta * vp(p.eta)
        rhs.append(-r)
    c0 = (rhs[0] * mat[1, 1] - mat[0, 1] * rhs[1]) / det
    c1 = (mat[0, 0] * rhs[1] - mat[1, 0] * rhs[0]) / det

    return InverseSolution(
        func=lambda x: v(x) + c0 + c1 * x,
        deriv=lambda x: vp(x) + c1,
        c0=float(c0),
        c1=float(c1),
    )


def second_difference_residual(
    u: Callable[[float], float], h: Callable[[float], float], n: int = 201, delta: float = 5e-3
) -> float:
    """``max |u'' - h|`` with a fourth-order five-point second difference.

    Stencils stay inside ``[-1, 1]``, so the sample points span
    ``[-1 + 2 delta, 1 - 2 delta]``.
    """
    xs = np.linspace(-1.0 + 2 * delta, 1.0 - 2 * delta, n)
    worst = 0.0
    for x in xs:
        d2 = (-u(x + 2 * delta) + 16 * u(x + delta) - 30 * u(x) + 16 * u(x - delta) - u(x - 2 * delta)) / (
            12 * delta * delta
        )
        worst = max(worst, abs(d2 - h(x)))
    return worst


def boundary_residuals(sol: SampledFunction, spec: ProblemSpec) -> tuple[float, float]:
    return tuple(cond.residual(sol, sol.derivative) for cond in spec.sides)


def characteristic_residual(lam: float, u: Callable[[float], float], spec: ProblemSpec, n: int = 401) -> float:
    """``max |u + lam * inv(u)|`` over an ``n``-point grid, with ``u`` normalised to sup-norm 1."""
    xs = np.linspace(-1.0, 1.0, n)
    norm = max(abs(u(x)) for x in xs)
    un = lambda x: u(x) / norm  # noqa: E731
    inv = apply_inverse(un, spec)
    return max(abs(un(x) + lam * inv(x)) for x in xs)


def eigen_residual(pair, spec: ProblemSpec) -> float:
    """Characteristic-value residual of an eigenpair from the solvers."""
    phase = pair.phase
    norm = phase.sup_norm()
    s, th = phase.s, phase.theta
    return characteristic_residual(pair.lam, lambda x: math.sin(s * x + th) / norm, spec)
