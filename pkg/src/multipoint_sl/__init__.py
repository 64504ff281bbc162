"""Eigenvalues of -u'' = lambda u on (-1, 1) with multi-point boundary conditions."""

from __future__ import annotations

from .continuation import Eigenpair, HomotopyState, continue_eigenpair, newton_correct, solve_spectrum
from .delta import InverseSolution, SampledFunction, apply_inverse, characteristic_residual, eigen_residual
from .errors import (
    BracketError,
    ClaimNotVerified,
    ClassJump,
    ConvergenceError,
    DomainError,
    HypothesisNotMet,
    InadmissibleSpec,
    MultipointError,
    NeumannCase,
    NoConvergence,
    PathFailure,
    SchemaError,
    SingularJacobian,
    SingularSystem,
    StructuralError,
)
from .gamma import (
    GammaGradient,
    gamma_endpoint,
    gamma_pair,
    jacobian_det,
    sign_law,
    single_gamma_zero,
    transversality_check,
)
from .oracle import OracleRoot, oracle_spectrum, theta_branch
from .phase import OscillationClass, PhaseSolution, Sign, classify_oscillation, count_interior_zeros, target_angles
from .problem import (
    AdmissibilityReport,
    Classification,
    EndpointCondition,
    Point,
    ProblemSpec,
    Side,
    SingleCondition,
    dirichlet_spec,
    load_spec,
    make_spec,
    neumann_spec,
    rescale,
    spec_from_dict,
    validate,
)
from .separated import SeparatedEigen, separated_eigen
from .verification import (
    Report,
    check_positivity,
    demo_counterexample,
    demo_missing_eigenvalues,
    run_property_suite,
)

__all__ = [
    "AdmissibilityReport",
    "BracketError",
    "ClaimNotVerified",
    "ClassJump",
    "Classification",
    "ConvergenceError",
    "DomainError",
    "Eigenpair",
    "EndpointCondition",
    "GammaGradient",
    "HomotopyState",
    "HypothesisNotMet",
    "InadmissibleSpec",
    "InverseSolution",
    "MultipointError",
    "NeumannCase",
    "NoConvergence",
    "OracleRoot",
    "OscillationClass",
    "PathFailure",
    "PhaseSolution",
    "Point",
    "ProblemSpec",
    "Report",
    "SampledFunction",
    "SchemaError",
    "SeparatedEigen",
    "Side",
    "Sign",
    "SingleCondition",
    "SingularJacobian",
    "SingularSystem",
    "StructuralError",
    "apply_inverse",
    "characteristic_residual",
    "check_positivity",
    "classify_oscillation",
    "continue_eigenpair",
    "count_interior_zeros",
    "demo_counterexample",
    "demo_missing_eigenvalues",
    "dirichlet_spec",
    "eigen_residual",
    "gamma_endpoint",
    "gamma_pair",
    "jacobian_det",
    "load_spec",
    "make_spec",
    "neumann_spec",
    "newton_correct",
    "oracle_spectrum",
    "rescale",
    "run_property_suite",
    "separated_eigen",
    "sign_law",
    "single_gamma_zero",
    "solve_spectrum",
    "spec_from_dict",
    "target_angles",
    "theta_branch",
    "transversality_check",
    "validate",
]
