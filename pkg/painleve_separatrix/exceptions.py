"""
Custom Exceptions for the Painlevé Separatrix Solver
====================================================

This module defines the exception hierarchy for painleve-separatrix. Every
exception carries a human-readable message plus a structured ``details``
dictionary, so that the CLI can turn a failure into an exit code and an
``error_report.json`` without parsing strings.

Exception Hierarchy:
    PainleveError (base)
    ├── PainleveConfigurationError (invalid configuration or CLI arguments)
    ├── PainleveDomainError (violated preconditions of pure functions)
    ├── PainleveIntegrationError (numerical failure while integrating)
    │   ├── ZeroDenominatorError
    │   ├── StepUnderflowError
    │   ├── MaxStepsExceededError
    │   ├── NonContiguousPathError
    │   ├── BranchDiscontinuityError
    │   ├── DegenerateDerivativeError
    │   └── PoleNavigationError
    │       └── OverlappingPolesError
    ├── WatcherAbort (control flow: a watcher asked the integrator to stop)
    ├── PainleveEigenvalueError (bracketing and bisection failures)
    │   ├── DiscriminantAgreementError
    │   ├── ToleranceUnreachableError
    │   └── NeverTrackedError
    ├── PainleveExtrapolationError (sequence acceleration failures)
    │   ├── InsufficientLengthError
    │   └── NoiseGuardError
    └── PainleveReproductionError (published-value manifest mismatch)

Usage Patterns:
    Hierarchical handling in orchestration code:

    >>> try:
    ...     record = bisect(kind, (3.0, 3.25), 1e-8)
    ... except DiscriminantAgreementError:
    ...     widen_bracket()
    ... except PainleveIntegrationError as e:
    ...     log_numerical_failure(e.details)

    Structured details:

    >>> error = StepUnderflowError(
    ...     "Step size fell below h_min",
    ...     details={"t": "(-3.2+0j)", "h": 1e-15, "h_min": 1e-12},
    ... )
    >>> str(error)
    "Step size fell below h_min (details: {'t': '(-3.2+0j)', 'h': 1e-15, 'h_min': 1e-12})"

Exit Code Mapping (CLI):
    * PainleveConfigurationError → 2
    * PainleveIntegrationError, PainleveEigenvalueError, PainleveExtrapolationError,
      PainleveDomainError → 3
    * PainleveReproductionError → 4
"""

from __future__ import annotations

from typing import Any, Optional


class PainleveError(Exception):
    """
    Base exception for all painleve-separatrix errors.

    Attributes:
        message: Human-readable error message describing what went wrong
        details: Dictionary containing structured error context. Common keys
                include ``parameter``, ``value``, ``t``, ``operation`` and
                ``error_type``.

    Examples:
        >>> error = PainleveError("Solve failed")
        >>> str(error)
        'Solve failed'

        >>> error = PainleveError("Solve failed", details={"b": 3.1})
        >>> error.details["b"]
        3.1
    """

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} (details: {self.details})"
        return self.message


class PainleveConfigurationError(PainleveError):
    """
    Raised when configuration values or command-line arguments are invalid.

    The details dictionary follows the argument-validation convention:
    ``parameter`` (name), ``value`` (offending value) and ``valid_range``.

    Examples:
        >>> raise PainleveConfigurationError(
        ...     "n_max must be at least 1",
        ...     details={"parameter": "n_max", "value": 0, "valid_range": ">= 1"},
        ... )
    """


class PainleveDomainError(PainleveError, ValueError):
    """
    Raised when a pure function is called outside its domain.

    Examples are ``gamma(x)`` with ``x <= 0``, ``slope_from_energy`` with a
    negative energy, or a line segment whose endpoints coincide.
    """


class PainleveIntegrationError(PainleveError):
    """
    Numerical failure while integrating a complex ODE along a contour.

    Attributes:
        state: Last accepted state when the failure happened, if known
        samples: Checkpoints accepted on the failing segment before the failure
    """

    def __init__(
        self,
        message: str,
        details: Optional[dict[str, Any]] = None,
        state: Any = None,
        samples: Optional[list[Any]] = None,
    ) -> None:
        super().__init__(message, details)
        self.state = state
        self.samples = samples if samples is not None else []


class ZeroDenominatorError(PainleveIntegrationError):
    """|y| fell below the zero guard; the y'²/(2y) term cannot be evaluated."""


class StepUnderflowError(PainleveIntegrationError):
    """
    The adaptive step fell below ``h_min``.

    This almost always means the integrator ran into a singularity that was not
    guarded by pole detection or zero bridging.
    """


class MaxStepsExceededError(PainleveIntegrationError):
    """The step budget of a segment or solve was exhausted."""


class NonContiguousPathError(PainleveIntegrationError):
    """Consecutive path segments do not join end to start."""


class BranchDiscontinuityError(PainleveIntegrationError):
    """The tracked square root u = √y jumped between consecutive checkpoints."""


class DegenerateDerivativeError(PainleveIntegrationError):
    """|y'| is too small for the Laurent pole estimator to be meaningful."""


class PoleNavigationError(PainleveIntegrationError):
    """A pole detour could not be planned or completed."""


class OverlappingPolesError(PoleNavigationError):
    """Another known pole lies inside the region a detour would sweep."""


class WatcherAbort(PainleveError):
    """
    Raised by ``integrate_segment`` when the step watcher requests termination.

    Attributes:
        reason: The watcher's payload (a pole sighting, a bridge request, a
                classification decision, ...)
        state: Last accepted state, in the picture the segment was integrated in
        samples: Checkpoints accepted on this segment before the abort
    """

    def __init__(
        self,
        message: str,
        reason: Any = None,
        state: Any = None,
        samples: Optional[list[Any]] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        super().__init__(message, details)
        self.reason = reason
        self.state = state
        self.samples = samples if samples is not None else []


class PainleveEigenvalueError(PainleveError):
    """Failures in bracketing or bisecting an eigenvalue."""


class DiscriminantAgreementError(PainleveEigenvalueError):
    """Both bracket endpoints produce the same discriminant; the bracket is invalid."""


class ToleranceUnreachableError(PainleveEigenvalueError):
    """
    Bisection stopped before reaching the requested tolerance.

    Attributes:
        record: Best available ``EigenvalueRecord`` (flagged in its diagnostics)
    """

    def __init__(self, message: str, record: Any = None, details: Optional[dict[str, Any]] = None) -> None:
        super().__init__(message, details)
        self.record = record


class NeverTrackedError(PainleveEigenvalueError):
    """The solve never stayed inside the tube around y = −2t."""


class PainleveExtrapolationError(PainleveError):
    """Failures in sequence acceleration."""


class InsufficientLengthError(PainleveExtrapolationError):
    """The sequence is too short for the requested extrapolation order."""


class NoiseGuardError(PainleveExtrapolationError):
    """The requested order would amplify input noise beyond the projected tail term."""


class PainleveReproductionError(PainleveError):
    """Computed values disagree with the published-value manifest."""


def wrap_numerical_error(original_error: Exception, operation: str, **context: Any) -> PainleveIntegrationError:
    """
    Wrap an unexpected exception raised inside numerical code.

    Errors that already belong to the hierarchy are returned unchanged when they
    are integration errors; anything else becomes a ``PainleveIntegrationError``
    whose details name the original type.

    Args:
        original_error: The exception that escaped numerical code
        operation: Name of the operation that was running
        **context: Extra key/value pairs for the details dictionary

    Returns:
        A PainleveIntegrationError suitable for ``raise ... from original_error``
    """
    if isinstance(original_error, PainleveIntegrationError):
        return original_error
    details: dict[str, Any] = {
        "operation": operation,
        "error_type": type(original_error).__name__,
        "error": str(original_error),
    }
    details.update(context)
    return PainleveIntegrationError(f"{operation} failed: {original_error!s}", details=details)


__all__ = [
    "BranchDiscontinuityError",
    "DegenerateDerivativeError",
    "DiscriminantAgreementError",
    "InsufficientLengthError",
    "MaxStepsExceededError",
    "NeverTrackedError",
    "NoiseGuardError",
    "NonContiguousPathError",
    "OverlappingPolesError",
    "PainleveConfigurationError",
    "PainleveDomainError",
    "PainleveEigenvalueError",
    "PainleveError",
    "PainleveExtrapolationError",
    "PainleveIntegrationError",
    "PainleveReproductionError",
    "PoleNavigationError",
    "StepUnderflowError",
    "ToleranceUnreachableError",
    "WatcherAbort",
    "ZeroDenominatorError",
    "wrap_numerical_error",
]
