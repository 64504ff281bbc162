"""Seeded generators of admissible problem data for property runs."""

from __future__ import annotations

import math

import numpy as np

from .problem import EndpointCondition, Point, ProblemSpec, Side, SingleCondition

KINDS = ("general", "dirichlet", "neumann")


def _split(total: float, m: int, rng: np.random.Generator, nonneg: bool) -> np.ndarray:
    if total == 0.0:
        return np.zeros(m)
    w = rng.dirichlet(np.ones(m)) * total
    if not nonneg:
        w *= rng.choice([-1.0, 1.0], size=m)
    return w


def random_endpoint(
    rng: np.random.Generator,
    side: Side,
    kind: str = "general",
    max_points: int = 3,
    max_ratio: float = 0.9,
    nonneg_alpha: bool = False,
) -> EndpointCondition:
    """Random condition for one endpoint satisfying all three standing hypotheses.

    The contraction sum is ``r**2`` with ``r`` uniform on ``[0, max_ratio]``,
    so the margin is at least ``1 - max_ratio**2``.
    """
    nu = int(side)
    if kind == "dirichlet":
        alpha0, beta0 = rng.uniform(0.2, 2.0), 0.0
    elif kind == "neumann":
        alpha0, beta0 = 0.0, nu * rng.uniform(0.2, 2.0)
    else:
        alpha0, beta0 = rng.uniform(0.2, 2.0), nu * rng.uniform(0.1, 2.0)
    m = int(rng.integers(1, max_points + 1))
    r = rng.uniform(0.0, max_ratio)
    if alpha0 == 0.0:
        sum_a, sum_b = 0.0, r * abs(beta0)
    elif beta0 == 0.0:
        sum_a, sum_b = r * alpha0, 0.0
    else:
        b = rng.uniform(0.0, 0.5 * math.pi)
        sum_a, sum_b = r * math.cos(b) * alpha0, r * math.sin(b) * abs(beta0)
    alphas = _split(sum_a, m, rng, nonneg_alpha)
    betas = _split(sum_b, m, rng, False)
    etas = rng.uniform(-1.0, 1.0, size=m)
    etas[etas == side.endpoint] = 0.0
    return EndpointCondition(side, alpha0, beta0, [Point(e, a, b) for e, a, b in zip(etas, alphas, betas)])


def random_admissible_spec(
    rng: np.random.Generator,
    neumann_prob: float = 0.1,
    nonneg_alpha: bool = False,
    max_points: int = 3,
    max_ratio: float = 0.9,
) -> ProblemSpec:
    if rng.uniform() < neumann_prob:
        kinds = ("neumann", "neumann")
    else:
        kinds = tuple(rng.choice(KINDS, p=[0.6, 0.25, 0.15]) for _ in range(2))
        if kinds == ("neumann", "neumann"):
            kinds = ("general", "neumann")
    left = random_endpoint(rng, Side.LEFT, kinds[0], max_points, max_ratio, nonneg_alpha)
    right = random_endpoint(rng, Side.RIGHT, kinds[1], max_points, max_ratio, nonneg_alpha)
    return ProblemSpec(left, right)


def random_batch(seed: int, n: int, **kw) -> list[ProblemSpec]:
    rng = np.random.default_rng(seed)
    return [random_admissible_spec(rng, **kw) for _ in range(n)]


def random_single_condition(rng: np.random.Generator, max_points: int = 3, max_ratio: float = 0.95) -> SingleCondition:
    """Random lone condition at an arbitrary anchor; ``beta0`` may take either sign."""
    kind = rng.choice(["general", "dirichlet", "neumann"], p=[0.6, 0.2, 0.2])
    if kind == "dirichlet":
        alpha0, beta0 = rng.uniform(0.1, 2.0), 0.0
    elif kind == "neumann":
        alpha0, beta0 = 0.0, rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0)
    else:
        alpha0, beta0 = rng.uniform(0.1, 2.0), rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0)
    m = int(rng.integers(1, max_points + 1))
    r = rng.uniform(0.0, max_ratio)
    b = rng.uniform(0.0, 0.5 * math.pi)
    sum_a = r * (math.cos(b) if beta0 else 1.0) * alpha0
    sum_b = r * (math.sin(b) if alpha0 else 1.0) * abs(beta0)
    alphas = _split(sum_a, m, rng, False)
    betas = _split(sum_b, m, rng, False)
    etas = rng.uniform(-1.0, 1.0, size=m)
    eta0 = float(rng.uniform(-1.0, 1.0))
    return SingleCondition(alpha0, beta0, eta0, [Point(e, a, b) for e, a, b in zip(etas, alphas, betas)])
