"""The ten acceptance criteria, each at its stated tolerance.

Every test records a single pass/fail line that is repeated in the
terminal summary under "acceptance criteria".
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from multipoint_sl import (
    Sign,
    Side,
    apply_inverse,
    check_positivity,
    continue_eigenpair,
    demo_counterexample,
    demo_missing_eigenvalues,
    dirichlet_spec,
    eigen_residual,
    neumann_spec,
    oracle_spectrum,
    single_gamma_zero,
    solve_spectrum,
)
from multipoint_sl.delta import boundary_residuals, second_difference_residual
from multipoint_sl.gamma import gamma_condition, gamma_condition_vec
from multipoint_sl.sampling import random_admissible_spec, random_batch, random_single_condition
from multipoint_sl.verification import DEMOS

PI = math.pi
K_MAX = 15


@pytest.fixture(scope="module")
def solved(batch):
    """Continuation pairs k = 0..15 and oracle roots for the seeded 100-spec batch."""
    out = []
    for spec in batch:
        pairs = solve_spectrum(spec, K_MAX)
        nxt = continue_eigenpair(spec, K_MAX + 1)
        roots = oracle_spectrum(spec, 0.5 * (pairs[-1].s + nxt.s))
        out.append((spec, pairs, roots))
    return out


def test_criterion_01_separated_exactness(record_criterion):
    worst = 0.0
    for pair in solve_spectrum(dirichlet_spec(), 20):
        exact = ((pair.k + 1) * PI / 2) ** 2
        worst = max(worst, abs(pair.lam - exact) / exact)
    neu = solve_spectrum(neumann_spec(), 20)
    zero_exact = neu[0].lam == 0.0 and neu[0].is_constant
    for pair in neu[1:]:
        exact = (pair.k * PI / 2) ** 2
        worst = max(worst, abs(pair.lam - exact) / exact)
    ok = worst <= 1e-10 and zero_exact
    record_criterion(1, ok, f"max rel err {worst:.2e} <= 1e-10, Neumann lambda_0 == 0: {zero_exact}")
    assert ok


def test_criterion_02_oracle_agreement(solved, record_criterion):
    worst, index_mismatch, count_mismatch = 0.0, 0, 0
    for _, pairs, roots in solved:
        if len(roots) != len(pairs):
            count_mismatch += 1
        for p, r in zip(pairs, roots):
            worst = max(worst, abs(p.lam - r.lam) / max(1.0, p.lam))
            index_mismatch += r.k != p.k
    ok = worst <= 1e-8 and index_mismatch == 0 and count_mismatch == 0
    record_criterion(
        2, ok, f"{len(solved)} specs, max rel diff {worst:.2e} <= 1e-8, index mismatches {index_mismatch}"
    )
    assert ok


def test_criterion_03_spectrum_properties(solved, record_criterion):
    min_gap, min_margin, bad_class, bad_lam0 = math.inf, math.inf, 0, 0
    for spec, pairs, _ in solved:
        lams = [p.lam for p in pairs]
        min_gap = min(min_gap, float(np.diff(lams).min()))
        for p in pairs:
            if p.is_constant:
                continue
            if p.osc is None or p.osc.k != p.k or p.osc.sign is not Sign.PLUS:
                bad_class += 1
            else:
                min_margin = min(min_margin, p.osc.boundary_margin)
        if spec.invertible and not lams[0] > 0:
            bad_lam0 += 1
    ok = min_gap > 1e-9 and min_margin > 1e-6 and bad_class == 0 and bad_lam0 == 0
    record_criterion(
        3,
        ok,
        f"min gap {min_gap:.3e} > 1e-9, min margin {min_margin:.3e} > 1e-6, "
        f"unclassified {bad_class}, lambda_0 violations {bad_lam0}",
    )
    assert ok


def test_criterion_04_single_condition_zero(record_criterion):
    rng = np.random.default_rng(404)
    s_values = np.array([0.5, 1.0, 2.0, 5.0, 10.0])
    grid = np.linspace(0.0, PI, 20_001)[:-1]
    bad_count, min_slope = 0, math.inf
    for _ in range(1000):
        cond = random_single_condition(rng)
        vals = gamma_condition_vec(cond, s_values[:, None], grid[None, :])[0]
        # close the scan with the antiperiodic value at pi
        closed = np.concatenate([vals, -vals[:, :1]], axis=1)
        counts = np.count_nonzero(np.sign(closed[:, :-1]) != np.sign(closed[:, 1:]), axis=1)
        bad_count += int(np.count_nonzero(counts != 1))
        for s in s_values:
            th = single_gamma_zero(cond, float(s))
            min_slope = min(min_slope, abs(gamma_condition(cond, float(s), th).d_theta))
    ok = bad_count == 0 and min_slope >= 1e-6
    record_criterion(4, ok, f"5000 cases, zero-count failures {bad_count}, min |G_theta| {min_slope:.3e} >= 1e-6")
    assert ok


def test_criterion_05_transversality(solved, record_criterion):
    worst = math.inf
    for _, pairs, _ in solved:
        for p in pairs:
            if not p.is_constant:
                worst = min(worst, min(abs(v) for v in p.transversality))
    ok = worst >= 1e-8
    record_criterion(5, ok, f"min |lambda beta0 u - alpha0 u'| {worst:.3e} >= 1e-8")
    assert ok


def test_criterion_06_inverse(record_criterion):
    rng = np.random.default_rng(606)
    specs = []
    while len(specs) < 20:
        spec = random_admissible_spec(rng)
        if spec.invertible:
            specs.append(spec)
    tests = [lambda x: 1.0, lambda x: x, lambda x: x * x, lambda x: math.sin(PI * x), math.exp]
    worst_d2, worst_bc, worst_eig = 0.0, 0.0, 0.0
    for spec in specs:
        for h in tests:
            u = apply_inverse(h, spec)
            worst_d2 = max(worst_d2, second_difference_residual(u, h))
            worst_bc = max(worst_bc, max(abs(r) for r in boundary_residuals(u, spec)))
        for pair in solve_spectrum(spec, 8):
            worst_eig = max(worst_eig, eigen_residual(pair, spec))
    ok = worst_d2 <= 1e-8 and worst_bc <= 1e-9 and worst_eig <= 1e-7
    record_criterion(
        6,
        ok,
        f"second difference {worst_d2:.2e} <= 1e-8, boundary {worst_bc:.2e} <= 1e-9, "
        f"eigen residual {worst_eig:.2e} <= 1e-7",
    )
    assert ok


def test_criterion_07_counterexamples(record_criterion):
    worst, flags = 0.0, True
    for name in DEMOS:
        report = demo_counterexample(name)
        for check in report.checks:
            if check.id.startswith("residual"):
                worst = max(worst, check.value)
        flags &= report["contraction_holds"].passed and report["sign_condition_violated"].passed
    ok = worst <= 1e-14 and flags
    record_criterion(7, ok, f"max identity residual {worst:.2e} <= 1e-14, contraction holds and sign fails: {flags}")
    assert ok


def test_criterion_08_missing_eigenvalues(record_criterion):
    report = demo_missing_eigenvalues(1000, samples=100_001)
    g_max = report["gamma_negative_on_interval"].value
    spot = report["spot_identity"].value
    window = report.inputs["empty_k_window_stated"]
    ok = g_max < 0 and spot <= 1e-12 and window == [993, 1007] and report.passed
    record_criterion(
        8, ok, f"max Gamma on I_k0 {g_max:.4f} < 0, empty k in {window}, spot identity error {spot:.1e} <= 1e-12"
    )
    assert ok


def test_criterion_09_positivity(record_criterion):
    specs = random_batch(909, 100, nonneg_alpha=True)
    failures, worst = 0, math.inf
    for spec in specs:
        report = check_positivity(solve_spectrum(spec, 0)[0], spec)
        failures += not report.passed
        worst = min(worst, report["interior_min_positive"].value)
    ok = failures == 0
    record_criterion(9, ok, f"100 specs with alpha_i >= 0, failures {failures}, smallest interior min {worst:.3e}")
    assert ok


def test_criterion_10_derivatives(record_criterion):
    rng = np.random.default_rng(1010)
    h = 1e-6
    worst, sign_failures, zeros = 0.0, 0, 0
    for _ in range(10_000):
        spec = random_admissible_spec(rng)
        side = Side.LEFT if rng.uniform() < 0.5 else Side.RIGHT
        cond = spec.side(side)
        s, th, t = rng.uniform(0.05, 30.0), rng.uniform(0.0, 2 * PI), rng.uniform(0.0, 1.0)
        g = gamma_condition(cond, s, th, t)
        fd_s = (gamma_condition(cond, s + h, th, t).value - gamma_condition(cond, s - h, th, t).value) / (2 * h)
        fd_th = (gamma_condition(cond, s, th + h, t).value - gamma_condition(cond, s, th - h, t).value) / (2 * h)
        fd_t = (gamma_condition(cond, s, th, t + h).value - gamma_condition(cond, s, th, t - h).value) / (2 * h)
        for exact, fd in ((g.d_s, fd_s), (g.d_theta, fd_th), (g.d_t, fd_t)):
            worst = max(worst, abs(exact - fd) / max(1.0, abs(exact)))
        z = single_gamma_zero(cond, s, t)
        gz = gamma_condition(cond, s, z, t)
        zeros += 1
        sign_failures += not int(side) * gz.d_s * gz.d_theta > 0
    ok = worst <= 1e-7 and sign_failures == 0
    record_criterion(
        10, ok, f"10000 samples, max rel err {worst:.2e} <= 1e-7, sign law failures {sign_failures}/{zeros}"
    )
    assert ok
