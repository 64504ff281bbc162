"""Reproducible checks: counterexamples, positivity and property batteries.

Every function returns a :class:`Report` whose checks carry the measured
value and the tolerance it was compared against, so a report can be
serialised and audited without re-running anything.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .continuation import Eigenpair, continue_eigenpair, solve_spectrum
from .delta import eigen_residual
from .errors import ClaimNotVerified, ClassJump, ConvergenceError, HypothesisNotMet, NeumannCase, SingularSystem
from .oracle import oracle_spectrum
from .phase import Sign, count_interior_zeros
from .problem import Point, ProblemSpec, SingleCondition, contraction_lhs, make_spec, rescale, validate

E = math.e
DEMOS = ("negative-lambda", "multiplicity-two", "dirichlet-negative")
IDENTITY_TOL = 1e-14


@dataclass
class Check:
    id: str
    passed: bool
    value: Any = None
    tolerance: Any = None

    def to_dict(self) -> dict:
        value = self.value
        if isinstance(value, float) and not math.isfinite(value):
            value = str(value)
        return {"id": self.id, "pass": bool(self.passed), "value": value, "tolerance": self.tolerance}


@dataclass
class Report:
    name: str
    inputs: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, id: str, passed: bool, value: Any = None, tolerance: Any = None) -> Check:
        check = Check(id, bool(passed), value, tolerance)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def to_dict(self) -> dict:
        out = {"name": self.name, "inputs": self.inputs, "checks": [c.to_dict() for c in self.checks]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, **kw) -> str:
        kw.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kw)


# ---------------------------------------------------------------------------
# positivity of the ground state
# ---------------------------------------------------------------------------


def check_positivity(pair: Eigenpair, spec: ProblemSpec, n: int = 2001) -> Report:
    """Ground state is positive inside, and at every endpoint whose ``beta0`` is nonzero."""
    if pair.k != 0:
        raise ValueError(f"positivity concerns the k = 0 eigenpair, got k = {pair.k}")
    negative = [(c.side.name, p.alpha) for c in spec.sides for p in c.points if p.alpha < 0]
    if negative:
        raise HypothesisNotMet(f"positivity needs all multi-point alphas >= 0; found {negative}")
    report = Report("positivity", {"lambda": pair.lam, "samples": n})
    xs = np.linspace(-1.0, 1.0, n + 2)[1:-1]
    u = pair.u(xs)
    report.add("interior_min_positive", float(u.min()) > 0, float(u.min()), 0.0)
    for cond in spec.sides:
        if cond.beta0 != 0.0:
            val = float(pair.u(cond.side.endpoint))
            report.add(f"endpoint_{cond.side.name.lower()}_positive", val > 0, val, 0.0)
    return report


# ---------------------------------------------------------------------------
# counterexamples with negative lambda
# ---------------------------------------------------------------------------


def _basis():
    """``e^x`` and ``e^-x`` with derivatives; both solve ``-u'' = -u``."""
    return {
        "exp(x)": (np.exp, np.exp),
        "exp(-x)": (lambda x: np.exp(-x), lambda x: -np.exp(-x)),
    }


def _single_residual(cond: SingleCondition, u, up) -> float:
    lhs = cond.alpha0 * u(cond.eta0) + cond.beta0 * up(cond.eta0)
    rhs = math.fsum(p.alpha * u(p.eta) + p.beta * up(p.eta) for p in cond.points)
    return float(lhs - rhs)


def generalized_sign_ok(cond: SingleCondition) -> bool:
    """Analogue of the endpoint sign hypothesis for a lone condition.

    There must be an orientation ``nu`` such that every point lies strictly on
    the interior side of ``eta0`` (as it would for the endpoint ``nu``) and
    ``nu * beta0 >= 0``.
    """
    etas = [p.eta for p in cond.points if p.alpha != 0.0 or p.beta != 0.0]
    for nu in (-1, 1):
        inside = all(nu * (cond.eta0 - e) > 0 for e in etas)
        if inside and nu * cond.beta0 >= 0:
            return True
    return False


def negative_lambda_condition() -> SingleCondition:
    a1, b2 = 2.0 / (E * (E * E + 1.0)), 2.0 / (E * E + 1.0)
    return SingleCondition(1.0, 1.0, -1.0, [(0.0, a1, 0.0), (1.0, 0.0, b2)])


def multiplicity_two_spec() -> ProblemSpec:
    a1, b2 = 2.0 / (E * (E * E + 1.0)), 2.0 / (E * E + 1.0)
    return make_spec(
        (1.0, 1.0, [(0.0, a1, 0.0), (1.0, 0.0, b2)]),
        (1.0, -1.0, [(0.0, a1, 0.0), (-1.0, 0.0, -b2)]),
    )


def dirichlet_negative_condition() -> SingleCondition:
    c = E * (E * E - 1.0) / (E**4 - 1.0)
    return SingleCondition(1.0, 0.0, 0.0, [(-1.0, c, 0.0), (1.0, c, 0.0)])


def demo_counterexample(name: str) -> Report:
    """Verify one of the negative-eigenvalue counterexamples by direct substitution."""
    if name not in DEMOS:
        raise ValueError(f"unknown demo {name!r}; choose from {DEMOS}")
    report = Report(name, {"lambda": -1.0})
    basis = _basis()

    if name == "multiplicity-two":
        spec = multiplicity_two_spec()
        for label, (u, up) in basis.items():
            for cond in spec.sides:
                r = cond.residual(u, up)
                report.add(f"residual_{cond.side.name.lower()}[{label}]", abs(r) <= IDENTITY_TOL, abs(r), IDENTITY_TOL)
        rep = validate(spec)
        report.add("contraction_holds", all(rep.cond_contraction), list(rep.margins), "> 0")
        report.add("sign_condition_violated", not any(rep.cond_sign), list(rep.cond_sign), "both false")
        report.notes.append("both basis functions satisfy both conditions: lambda = -1 has multiplicity two")
        return report

    cond = negative_lambda_condition() if name == "negative-lambda" else dirichlet_negative_condition()
    report.inputs["condition"] = {
        "alpha0": cond.alpha0,
        "beta0": cond.beta0,
        "eta0": cond.eta0,
        "points": [list(p) for p in cond.points],
    }
    for label, (u, up) in basis.items():
        r = _single_residual(cond, u, up)
        report.add(f"residual[{label}]", abs(r) <= IDENTITY_TOL, abs(r), IDENTITY_TOL)
    if name == "dirichlet-negative":
        c = cond.points[0].alpha
        simplified = E / (E * E + 1.0)
        report.add("coefficient_simplifies", abs(c - simplified) <= IDENTITY_TOL, abs(c - simplified), IDENTITY_TOL)
    lhs = contraction_lhs(cond.alpha0, cond.beta0, cond.points)
    report.add("contraction_holds", lhs < 1.0, lhs, "< 1")
    report.add("sign_condition_violated", not generalized_sign_ok(cond), generalized_sign_ok(cond), False)
    report.notes.append("both basis functions satisfy the condition: the solution set is two-dimensional")
    return report


# ---------------------------------------------------------------------------
# missing eigenvalues when the contraction bound is exceeded
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MissingEigenCoefficients:
    k0: int
    eps: float
    alpha0: float
    beta0: float
    alpha1: float
    beta2: float
    eta1: float
    eta2: float

    @classmethod
    def for_k0(cls, k0: int) -> MissingEigenCoefficients:
        eps = 10.0 / k0
        ratio = (1.0 + eps) / math.sqrt(2.0)
        return cls(k0, eps, 1.0, 1.0 / (k0 * math.pi), ratio, ratio / (k0 * math.pi), 0.5 / k0, 1.0 / k0)

    @property
    def interval(self) -> tuple[float, float]:
        return (self.k0 - 10) * math.pi, (self.k0 + 10) * math.pi

    def gamma(self, s, flipped: bool = False):
        """Characteristic function on ``(0, 1)``; ``flipped`` negates the ``beta2`` term."""
        s = np.asarray(s, dtype=float)
        sign = -1.0 if flipped else 1.0
        return (
            self.alpha0 * np.sin(s)
            + s * self.beta0 * np.cos(s)
            - self.alpha1 * np.sin(s * self.eta1)
            + sign * s * self.beta2 * np.cos(s * self.eta2)
        )


def missing_eigen_spec(k0: int) -> ProblemSpec:
    """The same problem moved to ``[-1, 1]``; the ``beta2`` row is negated so its residual matches ``gamma``."""
    c = MissingEigenCoefficients.for_k0(k0)
    on_unit = make_spec(
        (1.0, 0.0, [(1.0, 0.0, 0.0)]),
        (c.alpha0, c.beta0, [(c.eta1, c.alpha1, 0.0), (c.eta2, 0.0, -c.beta2)]),
    )
    return rescale(on_unit, 0.0, 1.0)


def demo_missing_eigenvalues(k0: int = 1000, samples: int = 100_001, strict: bool = False) -> Report:
    """Sample the characteristic function over the long interval where it should stay negative.

    A sign change is reported as a failed check; with ``strict`` it raises
    :class:`ClaimNotVerified` instead.
    """
    if k0 < 10:
        raise ValueError("k0 must be at least 10")
    c = MissingEigenCoefficients.for_k0(k0)
    lo, hi = c.interval
    report = Report("missing-eigenvalues", {"k0": k0, "eps": c.eps, "samples": samples, "interval": [lo, hi]})

    s = np.linspace(lo, hi, samples)
    g = c.gamma(s)
    g_max = float(g.max())
    negative = g_max < 0
    report.add("gamma_negative_on_interval", negative, g_max, "< 0")

    spot = float(c.gamma(k0 * math.pi))
    expected = (-1.0) ** k0 - math.sqrt(2.0) * (1.0 + c.eps)
    report.add("spot_identity", abs(spot - expected) <= 1e-12, abs(spot - expected), 1e-12)

    flipped = float(c.gamma(k0 * math.pi, flipped=True))
    report.add("flipped_sign_positive_at_spot", flipped > 0, flipped, "> 0")

    ratio = (1.0 + c.eps) / math.sqrt(2.0)
    lhs = contraction_lhs(c.alpha0, c.beta0, [Point(c.eta1, c.alpha1, 0.0), Point(c.eta2, 0.0, c.beta2)])
    report.add("contraction_exceeded", lhs > 1.0, {"ratio_per_fraction": ratio, "sum_of_squares": lhs}, "> 1")

    # s in sigma_k forces s in [(k - 2) pi, (k + 2) pi]; empty sigma_k wherever that window fits in I
    implied = [k0 - 8, k0 + 8]
    stated = [k0 - 7, k0 + 7]
    report.inputs["empty_k_window_implied"] = implied
    report.inputs["empty_k_window_stated"] = stated
    report.add(
        "stated_window_covered",
        negative and implied[0] <= stated[0] and stated[1] <= implied[1],
        {"implied": implied, "stated": stated},
        "stated within implied",
    )
    if not negative:
        msg = f"gamma changes sign on I_k0 for k0={k0} (max {g_max:.3e}); eps={c.eps} is not small enough"
        report.notes.append(f"ClaimNotVerified: {msg}")
        if strict:
            raise ClaimNotVerified(msg)
    return report


def run_demo(name: str, k0: int = 1000) -> Report:
    if name == "missing-eigenvalues":
        return demo_missing_eigenvalues(k0)
    return demo_counterexample(name)


# ---------------------------------------------------------------------------
# property battery
# ---------------------------------------------------------------------------

AGREE_TOL = 1e-8
GAP_TOL = 1e-9
MARGIN_TOL = 1e-6
TRANSVERSAL_TOL = 1e-8
RESIDUAL_TOL = 1e-10
EIGEN_RESIDUAL_TOL = 1e-7
SLOPE_TOL = 1e-8
EIGEN_RESIDUAL_KMAX = 8


def _worst(values, default=0.0) -> float:
    values = list(values)
    return float(max(values)) if values else default


def run_property_suite(spec: ProblemSpec, k_max: int = 10, *, oracle: bool = True) -> Report:
    """Run the invariants of every solver on one spec and collect pass/fail entries."""
    report = Report("property-suite", {"spec": spec.to_dict(), "k_max": k_max})
    adm = validate(spec)
    report.add("admissible", adm.admissible, adm.to_dict(), "all hypotheses hold")
    if not adm.admissible:
        report.notes.append("rejected at validation; no solver was run")
        return report

    try:
        pairs = solve_spectrum(spec, k_max, check=False)
        nxt = continue_eigenpair(spec, k_max + 1, check=False)
    except (ConvergenceError, ClassJump) as exc:
        report.add("continuation", False, f"{type(exc).__name__}: {exc}", "paths reach t = 1")
        return report
    report.add("continuation", True, len(pairs), k_max + 1)

    lams = [p.lam for p in pairs]
    gaps = np.diff(lams)
    report.add("interlacing", bool(np.all(gaps > GAP_TOL)), float(gaps.min()) if len(gaps) else math.inf, GAP_TOL)

    if spec.invertible:
        report.add("lambda0_positive", lams[0] > 0, lams[0], "> 0")
    elif spec.is_neumann_type:
        report.add("lambda0_zero", lams[0] == 0.0 and pairs[0].is_constant, lams[0], 0.0)

    moving = [p for p in pairs if not p.is_constant]
    bad_class = [p.k for p in moving if p.osc is None or p.osc.k != p.k or p.osc.sign is not Sign.PLUS]
    margin = min((p.osc.boundary_margin for p in moving if p.osc is not None), default=math.inf)
    report.add("class_membership", not bad_class, bad_class, "(k, Plus) for every k")
    report.add("class_margin", margin > MARGIN_TOL, margin, MARGIN_TOL)

    res = _worst(max(abs(r) for r in p.residuals) for p in moving)
    report.add("boundary_residuals", res <= RESIDUAL_TOL, res, RESIDUAL_TOL)

    trans = min((min(abs(v) for v in p.transversality) for p in moving), default=math.inf)
    report.add("transversality", trans >= TRANSVERSAL_TOL, trans, TRANSVERSAL_TOL)

    if spec.invertible:
        try:
            worst = _worst(eigen_residual(p, spec) for p in moving if p.k <= EIGEN_RESIDUAL_KMAX)
            report.add("eigen_residual", worst <= EIGEN_RESIDUAL_TOL, worst, EIGEN_RESIDUAL_TOL)
        except (NeumannCase, SingularSystem) as exc:
            report.add("eigen_residual", False, str(exc), EIGEN_RESIDUAL_TOL)

    if spec.is_dirichlet_type:
        bad = [p.k for p in moving if count_interior_zeros(p.phase, of_derivative=True) != p.k + 1]
        report.add("derivative_zero_counts", not bad, bad, "k + 1 zeros of u'")
    if spec.is_neumann_type:
        bad = [p.k for p in moving if count_interior_zeros(p.phase) != p.k]
        report.add("zero_counts", not bad, bad, "k zeros of u")

    if oracle:
        s_max = 0.5 * (pairs[-1].s + nxt.s)
        roots = oracle_spectrum(spec, s_max)
        report.add("oracle_root_count", len(roots) == len(pairs), len(roots), len(pairs))
        worst_rel, mismatched = 0.0, []
        for p, r in zip(pairs, roots):
            worst_rel = max(worst_rel, abs(p.lam - r.lam) / max(1.0, p.lam))
            if r.k != p.k:
                mismatched.append(p.k)
        report.add("oracle_agreement", worst_rel <= AGREE_TOL, worst_rel, AGREE_TOL)
        report.add("oracle_indices", not mismatched, mismatched, "identical")
        slopes = [abs(r.slope) for r in roots if r.phase is not None]
        low = min(slopes, default=math.inf)
        report.add("oracle_simple_roots", low >= SLOPE_TOL, low, SLOPE_TOL)

    if all(p.alpha >= 0 for c in spec.sides for p in c.points):
        pos = check_positivity(pairs[0], spec)
        report.add("positivity", pos.passed, pos.to_dict()["checks"], "all positive")
    return report
