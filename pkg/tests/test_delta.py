from __future__ import annotations

import math

import numpy as np
import pytest

from multipoint_sl import (
    NeumannCase,
    PhaseSolution,
    SampledFunction,
    SingularSystem,
    apply_inverse,
    characteristic_residual,
    eigen_residual,
    make_spec,
    solve_spectrum,
)
from multipoint_sl.delta import adaptive_simpson, boundary_residuals, coefficient_matrix, second_difference_residual

PI = math.pi
XS = np.linspace(-1.0, 1.0, 41)

SMOOTH = {
    "1": lambda x: 1.0,
    "x": lambda x: x,
    "x^2": lambda x: x * x,
    "x^5 - x^3": lambda x: x**5 - x**3,
    "sin(pi x)": lambda x: math.sin(PI * x),
    "cos(3x)": lambda x: math.cos(3 * x),
    "exp(x)": math.exp,
}


def test_simpson():
    assert adaptive_simpson(math.sin, 0.0, PI) == pytest.approx(2.0, abs=1e-12)
    assert adaptive_simpson(math.exp, -1.0, 1.0) == pytest.approx(math.e - 1 / math.e, abs=1e-12)
    assert adaptive_simpson(math.exp, 0.3, 0.3) == 0.0


def test_dirichlet_constant(dirichlet):
    u = apply_inverse(lambda x: 1.0, dirichlet)
    for x in XS:
        assert u(x) == pytest.approx((x * x - 1) / 2, abs=1e-12)
        assert u.derivative(x) == pytest.approx(x, abs=1e-12)


def test_dirichlet_sine(dirichlet):
    u = apply_inverse(lambda x: math.sin(PI * x), dirichlet)
    for x in XS:
        assert u(x) == pytest.approx(-math.sin(PI * x) / PI**2, abs=1e-12)


@pytest.mark.parametrize("name", list(SMOOTH))
def test_multipoint_residuals(multipoint, name):
    h = SMOOTH[name]
    u = apply_inverse(h, multipoint)
    assert second_difference_residual(u, h) <= 1e-8
    assert max(abs(r) for r in boundary_residuals(u, multipoint)) <= 1e-9


def test_linearity(multipoint):
    h1, h2 = SMOOTH["cos(3x)"], SMOOTH["x^2"]
    a, b = 0.7, -2.3
    u1, u2 = apply_inverse(h1, multipoint), apply_inverse(h2, multipoint)
    u = apply_inverse(lambda x: a * h1(x) + b * h2(x), multipoint)
    for x in XS:
        assert abs(u(x) - a * u1(x) - b * u2(x)) <= 1e-10


def test_homogeneous(multipoint):
    u = apply_inverse(lambda x: 0.0, multipoint)
    assert (u.c0, u.c1) == (0.0, 0.0)
    assert all(u(x) == 0.0 for x in XS)


def test_sampled_input(multipoint):
    xs = np.linspace(-1, 1, 401)
    h = SampledFunction.from_samples(np.cos(3 * xs))
    u = apply_inverse(h, multipoint)
    exact = apply_inverse(SMOOTH["cos(3x)"], multipoint)
    assert max(abs(u(x) - exact(x)) for x in XS) <= 1e-8
    with pytest.raises(ValueError):
        SampledFunction.from_samples(np.zeros(400))
    with pytest.raises(ValueError):
        SampledFunction.from_samples(np.zeros(101))


def test_neumann_case(neumann):
    with pytest.raises(NeumannCase):
        apply_inverse(lambda x: 1.0, neumann)


def test_singular_system():
    # alpha0 = sum(alpha) on both sides kills the first column
    spec = make_spec((1.0, 0.0, [(0.0, 1.0, 0.0)]), (1.0, 0.0, [(0.0, 1.0, 0.0)]))
    assert coefficient_matrix(spec)[:, 0] == pytest.approx([0.0, 0.0])
    with pytest.raises(SingularSystem):
        apply_inverse(lambda x: 1.0, spec)


def test_eigen_residual_dirichlet(dirichlet):
    pair = solve_spectrum(dirichlet, 0)[0]
    assert eigen_residual(pair, dirichlet) <= 1e-9


def test_non_eigen_phase_detected(dirichlet):
    s0 = PI / 2
    ph = PhaseSolution(1.1 * s0, PI / 2)
    r = characteristic_residual(ph.lam, lambda x: math.sin(ph.s * x + ph.theta), dirichlet)
    assert r >= 1e-2


def test_eigen_residual_multipoint(multipoint):
    for pair in solve_spectrum(multipoint, 8):
        assert eigen_residual(pair, multipoint) <= 1e-7
