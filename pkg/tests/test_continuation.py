from __future__ import annotations

import math

import numpy as np
import pytest

from multipoint_sl import (
    ClassJump,
    HomotopyState,
    InadmissibleSpec,
    PathFailure,
    PhaseSolution,
    Sign,
    SingularJacobian,
    classify_oscillation,
    continue_eigenpair,
    gamma_pair,
    make_spec,
    newton_correct,
    separated_eigen,
    solve_spectrum,
)
from multipoint_sl.oracle import slope, theta_branch
from multipoint_sl.verification import missing_eigen_spec

PI = math.pi
# smallest positive root of 2 cos(s) = 0.4, squared (30-digit evaluation)
LAM0_DIRICHLET_RIGHT = 1.8753615478403260758
# first positive root of the 2x2 determinant for A cos(sx) + B sin(sx), squared
LAM1_NEUMANN_TYPE = 2.3280080427446275737


def test_newton_at_exact_root(dirichlet):
    hist = []
    out = newton_correct(HomotopyState(t=0.0, phase=PhaseSolution(PI / 2, PI / 2)), dirichlet, history=hist)
    assert (out.s, out.theta) == (PI / 2, PI / 2)
    assert len(hist) <= 2


def test_newton_quadratic_tail(dirichlet):
    hist = []
    start = PhaseSolution(PI / 2 + 0.01, PI / 2 - 0.01)
    out = newton_correct(HomotopyState(t=0.0, phase=start), dirichlet, history=hist)
    assert abs(out.s - PI / 2) <= 1e-12
    assert abs(out.theta - PI / 2) <= 1e-12
    assert hist[-1] <= 1e-12
    # each residual is bounded by a constant times the square of the previous one
    for a, b in zip(hist, hist[1:]):
        if a > 1e-8:
            assert b <= 10 * a * a


def _fold_point(spec, lo, hi):
    """A point on the left branch where dF/ds = 0, so the Jacobian vanishes there."""
    s = np.linspace(lo, hi, 4001)
    th = theta_branch(spec, s)
    d = np.array([slope(spec, a, b) for a, b in zip(s, th)])
    i = int(np.flatnonzero(np.sign(d[:-1]) != np.sign(d[1:]))[0])
    a, b, ta = s[i], s[i + 1], th[i]
    da = d[i]
    for _ in range(80):
        m = 0.5 * (a + b)
        tm = theta_branch(spec, [m], ref=ta)[0]
        dm = slope(spec, m, tm)
        if (dm < 0) == (da < 0):
            a, ta, da = m, tm, dm
        else:
            b = m
    return a, ta


def test_newton_singular_jacobian():
    spec = missing_eigen_spec(50)
    s, th = _fold_point(spec, 20 * PI, 30 * PI)
    gm, gp = gamma_pair(s, th, spec)
    assert abs(gp.value) > 1e-6
    with pytest.raises(SingularJacobian):
        newton_correct(HomotopyState(t=1.0, phase=PhaseSolution(s, th)), spec)


def test_continuation_breaks_on_inadmissible_spec():
    spec = missing_eigen_spec(50)
    with pytest.raises(InadmissibleSpec):
        continue_eigenpair(spec, 40)
    with pytest.raises((PathFailure, ClassJump, SingularJacobian)):
        continue_eigenpair(spec, 40, check=False)


def test_separated_returns_seed(robin):
    for k in range(5):
        seed = separated_eigen(robin, k)
        pair = continue_eigenpair(robin, k)
        assert pair.lam == seed.lam
        assert pair.phase.s == seed.phase.s
        assert pair.phase.theta % PI == pytest.approx(seed.theta_mod_pi, abs=1e-15)


def test_dirichlet_left_multipoint_right():
    spec = make_spec((1.0, 0.0, [(0.0, 0.0, 0.0)]), (1.0, 0.0, [(0.0, 0.4, 0.0)]))
    pair = continue_eigenpair(spec, 0)
    assert pair.lam == pytest.approx(LAM0_DIRICHLET_RIGHT, rel=1e-12)


def test_neumann_type_first_nonzero():
    spec = make_spec((0.0, -1.0, [(-0.5, 0.0, 0.3)]), (0.0, 1.0, [(0.5, 0.0, 0.3)]))
    pairs = solve_spectrum(spec, 1)
    assert pairs[0].lam == 0.0 and pairs[0].is_constant
    assert pairs[1].lam == pytest.approx(LAM1_NEUMANN_TYPE, rel=1e-12)


def test_dirichlet_spectrum(dirichlet):
    for pair in solve_spectrum(dirichlet, 5):
        assert pair.lam == pytest.approx(((pair.k + 1) * PI / 2) ** 2, rel=1e-11)


def test_trace_invariants(multipoint):
    for k in range(6):
        pair = continue_eigenpair(multipoint, k)
        assert pair.trace[0][0] == 0.0 and pair.trace[-1][0] == 1.0
        for t, s, th in pair.trace:
            gm, gp = gamma_pair(s, th, multipoint, t)
            assert max(abs(gm.value), abs(gp.value)) <= 1e-10
            osc = classify_oscillation(PhaseSolution(s, th), multipoint.scaled(t))
            assert (osc.k, osc.sign) == (k, Sign.PLUS)


def test_eigenpair_fields(multipoint):
    for pair in solve_spectrum(multipoint, 6):
        assert pair.lam == pytest.approx(pair.s**2, rel=1e-15)
        assert (pair.osc.k, pair.osc.sign) == (pair.k, Sign.PLUS)
        assert max(abs(r) for r in pair.residuals) <= 1e-10
        # the grid can only undershoot the exact maximum, by O((s h)^2)
        peak = np.abs(pair.u(np.linspace(-1, 1, 20001))).max()
        assert 1.0 - 1e-6 <= peak <= 1.0 + 1e-14
        assert pair.transversality is not None


def test_constant_pair_eigenfunction(neumann):
    pair = solve_spectrum(neumann, 0)[0]
    assert pair.is_constant and pair.s == 0.0
    np.testing.assert_array_equal(pair.u([-1.0, 0.0, 1.0]), 1.0)
    np.testing.assert_array_equal(pair.uprime([0.3]), 0.0)


def test_spectrum_rejects_inadmissible():
    spec = make_spec((1.0, 0.5, [(0.0, 0.0, 0.0)]), (1.0, 0.0, [(0.0, 0.0, 0.0)]))
    with pytest.raises(InadmissibleSpec) as info:
        solve_spectrum(spec, 2)
    assert info.value.report.cond_sign == (False, True)


def test_increasing_and_positive(batch):
    for spec in batch[:30]:
        lams = [p.lam for p in solve_spectrum(spec, 10)]
        assert np.all(np.diff(lams) > 1e-9)
        if spec.invertible:
            assert lams[0] > 0
