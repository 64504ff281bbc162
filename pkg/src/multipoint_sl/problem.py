"""Boundary-condition data model, admissibility checks and the problem-file schema.

A problem on ``[-1, 1]`` carries one multi-point condition per endpoint::

    alpha0 u(+-1) + beta0 u'(+-1) = sum_i alpha_i u(eta_i) + sum_i beta_i u'(eta_i)

Everything here is immutable; validation never mutates its input.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import SchemaError, StructuralError

# below this the strict inequalities of the hypotheses lose numeric meaning
MARGIN_FLOOR = 1e-10


class Side(enum.IntEnum):
    LEFT = -1
    RIGHT = 1

    @property
    def endpoint(self) -> float:
        return float(self.value)


class Classification(str, enum.Enum):
    SEPARATED = "Separated"
    DIRICHLET_TYPE = "DirichletType"
    NEUMANN_TYPE = "NeumannType"
    MIXED = "Mixed"
    GENERAL = "General"


class Point(NamedTuple):
    eta: float
    alpha: float
    beta: float


def _as_points(points: Sequence[Any]) -> tuple[Point, ...]:
    out = []
    for p in points:
        if isinstance(p, dict):
            p = (p["eta"], p["alpha"], p["beta"])
        eta, alpha, beta = p
        out.append(Point(float(eta), float(alpha), float(beta)))
    return tuple(out)


@dataclass(frozen=True)
class SingleCondition:
    """One multi-point condition anchored at an arbitrary point ``eta0``.

    Used for the single-condition problem on the whole real line; an
    endpoint condition is the special case ``eta0 = +-1``.
    """

    alpha0: float
    beta0: float
    eta0: float
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", _as_points(self.points))

    @property
    def etas(self) -> np.ndarray:
        return np.array([p.eta for p in self.points], dtype=float)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([p.alpha for p in self.points], dtype=float)

    @property
    def betas(self) -> np.ndarray:
        return np.array([p.beta for p in self.points], dtype=float)

    def contraction_lhs(self) -> float:
        return contraction_lhs(self.alpha0, self.beta0, self.points)

    def satisfies_hypotheses(self) -> bool:
        """Non-degeneracy and contraction; there is no sign requirement for a lone condition."""
        nondeg = self.alpha0 >= 0 and self.alpha0 + abs(self.beta0) > 0
        return nondeg and self.contraction_lhs() < 1.0


@dataclass(frozen=True)
class EndpointCondition:
    side: Side
    alpha0: float
    beta0: float
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "alpha0", float(self.alpha0))
        object.__setattr__(self, "beta0", float(self.beta0))
        object.__setattr__(self, "points", _as_points(self.points))

    @property
    def etas(self) -> np.ndarray:
        return np.array([p.eta for p in self.points], dtype=float)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([p.alpha for p in self.points], dtype=float)

    @property
    def betas(self) -> np.ndarray:
        return np.array([p.beta for p in self.points], dtype=float)

    @property
    def is_separated(self) -> bool:
        return all(p.alpha == 0.0 and p.beta == 0.0 for p in self.points)

    @property
    def is_dirichlet_type(self) -> bool:
        return self.beta0 == 0.0 and all(p.beta == 0.0 for p in self.points)

    @property
    def is_neumann_type(self) -> bool:
        return self.alpha0 == 0.0 and all(p.alpha == 0.0 for p in self.points)

    def as_single(self) -> SingleCondition:
        return SingleCondition(self.alpha0, self.beta0, self.side.endpoint, self.points)

    def scaled(self, t: float) -> EndpointCondition:
        """Same condition with the multi-point coefficients multiplied by ``t``."""
        pts = tuple(Point(p.eta, t * p.alpha, t * p.beta) for p in self.points)
        return EndpointCondition(self.side, self.alpha0, self.beta0, pts)

    def separated_part(self) -> EndpointCondition:
        return self.scaled(0.0)

    def residual(self, u, uprime) -> float:
        """Boundary residual ``alpha0 u(+-1) + beta0 u'(+-1) - sum(...)`` for callables u, u'."""
        x0 = self.side.endpoint
        val = self.alpha0 * u(x0) + self.beta0 * uprime(x0)
        for p in self.points:
            val -= p.alpha * u(p.eta) + p.beta * uprime(p.eta)
        return float(val)

    def to_dict(self) -> dict:
        return {
            "alpha0": self.alpha0,
            "beta0": self.beta0,
            "points": [{"eta": p.eta, "alpha": p.alpha, "beta": p.beta} for p in self.points],
        }


@dataclass(frozen=True)
class ProblemSpec:
    left: EndpointCondition
    right: EndpointCondition

    def __post_init__(self):
        if self.left.side is not Side.LEFT or self.right.side is not Side.RIGHT:
            raise StructuralError("left/right conditions must carry sides LEFT/RIGHT")

    def side(self, side: Side | int) -> EndpointCondition:
        return self.left if Side(side) is Side.LEFT else self.right

    @property
    def sides(self) -> tuple[EndpointCondition, EndpointCondition]:
        return (self.left, self.right)

    @property
    def is_separated(self) -> bool:
        return self.left.is_separated and self.right.is_separated

    @property
    def is_dirichlet_type(self) -> bool:
        return self.left.is_dirichlet_type and self.right.is_dirichlet_type

    @property
    def is_neumann_type(self) -> bool:
        return self.left.is_neumann_type and self.right.is_neumann_type

    @property
    def invertible(self) -> bool:
        return self.left.alpha0 + self.right.alpha0 > 0

    def scaled(self, t: float) -> ProblemSpec:
        return ProblemSpec(self.left.scaled(t), self.right.scaled(t))

    def separated_part(self) -> ProblemSpec:
        return self.scaled(0.0)

    def to_dict(self) -> dict:
        return {"left": self.left.to_dict(), "right": self.right.to_dict()}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def make_spec(left: dict | tuple, right: dict | tuple) -> ProblemSpec:
    """Build a spec from ``(alpha0, beta0, points)`` tuples or schema-style dicts."""

    def build(side, data):
        if isinstance(data, dict):
            return EndpointCondition(side, data["alpha0"], data["beta0"], data["points"])
        alpha0, beta0, points = data
        return EndpointCondition(side, alpha0, beta0, points)

    return ProblemSpec(build(Side.LEFT, left), build(Side.RIGHT, right))


def dirichlet_spec() -> ProblemSpec:
    zero = [(0.0, 0.0, 0.0)]
    return make_spec((1.0, 0.0, zero), (1.0, 0.0, zero))


def neumann_spec() -> ProblemSpec:
    zero = [(0.0, 0.0, 0.0)]
    return make_spec((0.0, -1.0, zero), (0.0, 1.0, zero))


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    cond_nondegenerate: tuple[bool, bool]
    cond_sign: tuple[bool, bool]
    cond_contraction: tuple[bool, bool]
    cond_invertible: bool
    classification: Classification
    margins: tuple[float, float]

    @property
    def admissible(self) -> bool:
        return all(self.cond_nondegenerate) and all(self.cond_sign) and all(self.cond_contraction)

    @property
    def well_conditioned(self) -> bool:
        return self.admissible and min(self.margins) >= MARGIN_FLOOR

    def to_dict(self) -> dict:
        def pair(v):
            return {"left": v[0], "right": v[1]}

        return {
            "admissible": self.admissible,
            "cond_nondegenerate": pair(self.cond_nondegenerate),
            "cond_sign": pair(self.cond_sign),
            "cond_contraction": pair(self.cond_contraction),
            "cond_invertible": self.cond_invertible,
            "classification": self.classification.value,
            "margins": pair(tuple(None if math.isinf(m) else m for m in self.margins)),
        }


def contraction_lhs(alpha0: float, beta0: float, points: Sequence[Point]) -> float:
    """Left-hand side of the contraction hypothesis.

    A zero denominator with a zero numerator drops that fraction; a zero
    denominator with a nonzero numerator makes the hypothesis fail, which is
    reported as ``inf``.
    """
    sum_a = math.fsum(abs(p.alpha) for p in points)
    sum_b = math.fsum(abs(p.beta) for p in points)
    total = 0.0
    for num, den in ((sum_a, alpha0), (sum_b, beta0)):
        if den == 0.0:
            if num != 0.0:
                return math.inf
            continue
        total += (num / abs(den)) ** 2
    return total


def check_structure(spec: ProblemSpec, interval: tuple[float, float] = (-1.0, 1.0)) -> None:
    a, b = interval
    if not a < b:
        raise StructuralError(f"interval must satisfy a < b, got [{a}, {b}]")
    for cond in spec.sides:
        if len(cond.points) < 1:
            raise StructuralError(f"{cond.side.name}: at least one point row is required")
        own = a if cond.side is Side.LEFT else b
        for p in cond.points:
            if not all(math.isfinite(v) for v in p):
                raise StructuralError(f"{cond.side.name}: non-finite entry {p}")
            if not a <= p.eta <= b:
                raise StructuralError(f"{cond.side.name}: eta={p.eta} outside [{a}, {b}]")
            if p.eta == own:
                raise StructuralError(f"{cond.side.name}: eta may not equal its own endpoint {own}")
        if not (math.isfinite(cond.alpha0) and math.isfinite(cond.beta0)):
            raise StructuralError(f"{cond.side.name}: non-finite alpha0/beta0")


def classify(spec: ProblemSpec) -> Classification:
    """Coefficient-pattern classification.

    Neumann-type is tested first so that it coincides exactly with the
    non-invertible case, then the fully separated case.
    """
    if spec.is_neumann_type:
        return Classification.NEUMANN_TYPE
    if spec.is_separated:
        return Classification.SEPARATED
    if spec.is_dirichlet_type:
        return Classification.DIRICHLET_TYPE
    l, r = spec.left, spec.right
    if (l.is_dirichlet_type and r.is_neumann_type) or (l.is_neumann_type and r.is_dirichlet_type):
        return Classification.MIXED
    return Classification.GENERAL


def validate(spec: ProblemSpec) -> AdmissibilityReport:
    check_structure(spec)
    nondeg, sign, contr, margins = [], [], [], []
    for cond in spec.sides:
        nondeg.append(cond.alpha0 >= 0 and cond.alpha0 + abs(cond.beta0) > 0)
        sign.append(int(cond.side) * cond.beta0 >= 0)
        lhs = contraction_lhs(cond.alpha0, cond.beta0, cond.points)
        contr.append(lhs < 1.0)
        margins.append(1.0 - lhs)
    return AdmissibilityReport(
        cond_nondegenerate=tuple(nondeg),
        cond_sign=tuple(sign),
        cond_contraction=tuple(contr),
        cond_invertible=spec.left.alpha0 + spec.right.alpha0 > 0,
        classification=classify(spec),
        margins=tuple(margins),
    )


def rescale(spec: ProblemSpec, a: float, b: float) -> ProblemSpec:
    """Map a problem posed on ``[a, b]`` to the reference interval ``[-1, 1]``.

    Points move affinely; every derivative coefficient picks up ``2/(b-a)``.
    """
    check_structure(spec, (a, b))
    if a == -1.0 and b == 1.0:
        return spec
    width = b - a
    factor = 2.0 / width

    def move(cond: EndpointCondition) -> EndpointCondition:
        pts = []
        for p in cond.points:
            eta = (2.0 * p.eta - a - b) / width
            # guard against rounding pushing a point onto +-1
            eta = min(1.0, max(-1.0, eta))
            pts.append(Point(eta, p.alpha, p.beta * factor))
        return EndpointCondition(cond.side, cond.alpha0, cond.beta0 * factor, pts)

    return ProblemSpec(move(spec.left), move(spec.right))


# ---------------------------------------------------------------------------
# problem file
# ---------------------------------------------------------------------------

_TOP_KEYS = {"interval", "left", "right"}
_SIDE_KEYS = {"alpha0", "beta0", "points"}
_POINT_KEYS = {"eta", "alpha", "beta"}


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _check_keys(obj: Any, allowed: set, where: str, required: set | None = None) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
    missing = (required if required is not None else allowed) - set(obj)
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")


def spec_from_dict(data: dict) -> ProblemSpec:
    """Parse the problem-file document; specs on other intervals are rescaled."""
    _check_keys(data, _TOP_KEYS, "problem", required={"left", "right"})
    interval = data.get("interval", [-1.0, 1.0])
    if not isinstance(interval, list) or len(interval) != 2:
        raise SchemaError("interval: expected [a, b]")
    a, b = (_number(v, "interval") for v in interval)

    conds = {}
    for name, side in (("left", Side.LEFT), ("right", Side.RIGHT)):
        raw = data[name]
        _check_keys(raw, _SIDE_KEYS, name)
        if not isinstance(raw["points"], list):
            raise SchemaError(f"{name}.points: expected a list")
        pts = []
        for i, p in enumerate(raw["points"]):
            where = f"{name}.points[{i}]"
            _check_keys(p, _POINT_KEYS, where)
            pts.append(Point(*(_number(p[k], f"{where}.{k}") for k in ("eta", "alpha", "beta"))))
        conds[name] = EndpointCondition(
            side, _number(raw["alpha0"], f"{name}.alpha0"), _number(raw["beta0"], f"{name}.beta0"), pts
        )
    spec = ProblemSpec(conds["left"], conds["right"])
    return rescale(spec, a, b)


def load_spec(path: str | Path) -> ProblemSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return spec_from_dict(data)


def dump_spec(spec: ProblemSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec.to_dict(), indent=2) + "\n")
