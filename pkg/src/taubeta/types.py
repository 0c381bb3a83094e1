"""Shared result/tolerance types and error classes."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class TauBetaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TauBetaError, ValueError):
    """Input outside the domain of validity of the requested operation."""


class PoleError(DomainError):
    """Evaluation at (or numerically on top of) a gamma-function pole."""


class NonIntegrable(DomainError):
    """Declared endpoint exponent makes the integral divergent."""


class DecayViolation(TauBetaError):
    """Sampled integrand exceeds its declared decay envelope."""


class NormalizerZero(DomainError):
    """The normalizer Gamma(alpha)(1 - 2^(1-alpha)) is numerically zero."""


class OutsideDomain(DomainError):
    """Argument outside the convergence region of a series."""


class Status(enum.Enum):
    CONVERGED = "Converged"
    TOLERANCE_NOT_MET = "ToleranceNotMet"
    CONDITION_WARNING = "ConditionWarning"


@dataclass(frozen=True)
class Tolerances:
    """Accuracy targets and work budgets shared by series and quadrature.

    At least one of ``abs_tol``/``rel_tol`` must be strictly positive.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_terms: int = 10_000
    max_refinements: int = 12

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise DomainError("tolerances must be nonnegative")
        if not (self.abs_tol > 0 or self.rel_tol > 0):
            raise DomainError("at least one of abs_tol/rel_tol must be positive")
        if self.max_terms < 1 or self.max_refinements < 1:
            raise DomainError("work budgets must be positive integers")

    def target(self, scale: float) -> float:
        """Absolute error target for a result of magnitude ``scale``."""
        return max(self.abs_tol, self.rel_tol * abs(scale))

    def tightened(self, factor: float) -> "Tolerances":
        return Tolerances(self.abs_tol * factor, self.rel_tol * factor,
                          self.max_terms, self.max_refinements)


DEFAULT_TOL = Tolerances()


@dataclass
class EvalResult:
    """A computed value with an absolute-error estimate and work accounting."""

    value: complex
    abs_error_est: float
    work: int
    status: Status
    precision_loss: bool = False

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def scaled(self, factor: complex) -> "EvalResult":
        """Result of multiplying by an exactly-known constant."""
        return EvalResult(self.value * factor, self.abs_error_est * abs(factor),
                          self.work, self.status, self.precision_loss)


def combine_status(*results: EvalResult) -> Status:
    """Worst status across sub-results (warnings dominate clean convergence)."""
    if any(r.status is Status.TOLERANCE_NOT_MET for r in results):
        return Status.TOLERANCE_NOT_MET
    if any(r.status is Status.CONDITION_WARNING for r in results):
        return Status.CONDITION_WARNING
    return Status.CONVERGED


@dataclass
class IdentityReport:
    """Outcome of evaluating both sides of one identity at one parameter point."""

    identity_id: str
    params: dict = field(default_factory=dict)
    lhs: complex = 0.0
    rhs: complex = 0.0
    residual: float = math.inf
    tolerance: float = 0.0
    passed: bool = False
    informational: bool = False

    @staticmethod
    def from_sides(identity_id: str, params: dict, lhs: complex, rhs: complex,
                   tolerance: float, informational: bool = False) -> "IdentityReport":
        residual = abs(lhs - rhs) / max(1.0, abs(lhs))
        return IdentityReport(identity_id, params, lhs, rhs, residual,
                              tolerance, residual <= tolerance, informational)


def require_finite(name: str, value: complex) -> None:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must have finite components, got {value!r}")
