"""Exception hierarchy shared by every solver module."""

from __future__ import annotations


class MultipointError(Exception):
    """Base class for all package errors."""


class StructuralError(MultipointError, ValueError):
    """Malformed problem data (bad eta placement, empty point lists, bad interval)."""


class SchemaError(StructuralError):
    """Problem file does not match the JSON schema."""


class InadmissibleSpec(MultipointError, ValueError):
    """The standing hypotheses on the coefficients are not satisfied."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class DomainError(MultipointError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(MultipointError, RuntimeError):
    """A root finder failed to bracket or converge."""


class BracketError(ConvergenceError):
    pass


class SingularJacobian(ConvergenceError):
    pass


class NoConvergence(ConvergenceError):
    pass


class PathFailure(ConvergenceError):
    """Homotopy step size fell below its floor."""

    def __init__(self, message: str, k: int | None = None, t: float | None = None):
        super().__init__(message)
        self.k = k
        self.t = t


class ClassJump(MultipointError, RuntimeError):
    """Oscillation class changed along a continuation path."""

    def __init__(self, message: str, k: int | None = None, t: float | None = None):
        super().__init__(message)
        self.k = k
        self.t = t


class SingularSystem(MultipointError, ArithmeticError):
    """Boundary coefficient system for the inverse operator is (numerically) singular."""


class NeumannCase(SingularSystem):
    """alpha0^- + alpha0^+ = 0: the second-derivative operator has no inverse."""


class HypothesisNotMet(MultipointError):
    """A check was skipped because its extra hypotheses do not hold."""


class ClaimNotVerified(MultipointError):
    """A numeric demonstration did not confirm the expected claim."""
