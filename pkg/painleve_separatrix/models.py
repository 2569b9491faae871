"""
Data Models for the Painlevé Separatrix Solver
==============================================

This module holds every value type that flows between the solver modules:
integration states in the y- and u-pictures, path segments, step control,
checkpoints, pole events, solve records, classifications, eigenvalue records,
extrapolation results, WKB parameters, audit records and timing metrics.

Complex quantities (the independent variable t, the solution y and its
derivative) are plain Python ``complex`` values. All models are dataclasses
and serialize with ``dataclasses.asdict``; records that cross process
boundaries (eigenvalue records, classifications) are frozen.

Picture Conventions:
    * y-picture: the fourth Painlevé equation with both parameters zero,
      ``y'' = y'^2/(2y) + 2 t^2 y + 4 t y^2 + (3/2) y^3``
    * u-picture: ``u = sqrt(y)``, ``u'' = t^2 u + 2 t u^3 + (3/4) u^5``

Checkpoints always store y-picture values regardless of the picture that was
being integrated when they were produced.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

import numpy as np

from .exceptions import PainleveConfigurationError, PainleveDomainError

TWO_PI = 2.0 * math.pi
SPLIT_TOL = 1e-12


def is_finite_complex(value: complex) -> bool:
    """Return True when both components of ``value`` are finite."""
    return math.isfinite(value.real) and math.isfinite(value.imag)


# ---------------------------------------------------------------------------
# Integration states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PainleveState:
    """
    A point of integration in the y-picture.

    Attributes:
        t: Complex independent variable
        y: Solution value y(t)
        yp: First derivative dy/dt
    """

    t: complex
    y: complex
    yp: complex

    def as_vector(self) -> np.ndarray:
        return np.array([self.y, self.yp], dtype=complex)

    @classmethod
    def from_vector(cls, t: complex, z: np.ndarray) -> PainleveState:
        return cls(complex(t), complex(z[0]), complex(z[1]))

    def y_picture(self) -> tuple[complex, complex]:
        return self.y, self.yp

    def is_finite(self) -> bool:
        return all(is_finite_complex(v) for v in (self.t, self.y, self.yp))


@dataclass(frozen=True)
class UState:
    """
    A point of integration in the u-picture, ``u = sqrt(y)``.

    Attributes:
        t: Complex independent variable
        u: Square root of y on the tracked branch
        up: du/dt
    """

    t: complex
    u: complex
    up: complex

    def as_vector(self) -> np.ndarray:
        return np.array([self.u, self.up], dtype=complex)

    @classmethod
    def from_vector(cls, t: complex, z: np.ndarray) -> UState:
        return cls(complex(t), complex(z[0]), complex(z[1]))

    def y_picture(self) -> tuple[complex, complex]:
        """Return (y, y') = (u², 2u·u'), which is independent of the branch."""
        return self.u * self.u, 2.0 * self.u * self.up

    def is_finite(self) -> bool:
        return all(is_finite_complex(v) for v in (self.t, self.u, self.up))


State = Union[PainleveState, UState]


# ---------------------------------------------------------------------------
# Path geometry
# ---------------------------------------------------------------------------


class Orientation(str, Enum):
    """Sense of traversal of an arc."""

    COUNTERCLOCKWISE = "counterclockwise"
    CLOCKWISE = "clockwise"

    @property
    def sign(self) -> float:
        return 1.0 if self is Orientation.COUNTERCLOCKWISE else -1.0

    def flipped(self) -> Orientation:
        if self is Orientation.COUNTERCLOCKWISE:
            return Orientation.CLOCKWISE
        return Orientation.COUNTERCLOCKWISE


@dataclass(frozen=True)
class Line:
    """
    Straight segment from ``start`` to ``end`` in the complex t-plane.

    The segment is parameterized by arclength s ∈ [0, length].
    """

    start: complex
    end: complex

    def __post_init__(self) -> None:
        if self.start == self.end:
            raise PainleveDomainError(
                "Line segment endpoints coincide",
                details={"start": str(self.start), "end": str(self.end)},
            )

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    @property
    def start_point(self) -> complex:
        return self.start

    @property
    def end_point(self) -> complex:
        return self.end

    def point(self, s: float) -> complex:
        if s >= self.length:
            return self.end
        return self.start + s * (self.end - self.start) / self.length

    def tangent(self, s: float) -> complex:  # noqa: ARG002
        return (self.end - self.start) / self.length

    def split(self, s: float) -> tuple[Optional[Line], Optional[Line]]:
        """Cut at arclength ``s``; either side is None when it would be empty."""
        if s >= self.length * (1.0 - SPLIT_TOL):
            return self, None
        if s <= 0.0:
            return None, self
        cut = self.point(s)
        head = Line(self.start, cut) if cut != self.start else None
        tail = Line(cut, self.end) if cut != self.end else None
        return head, tail

    def reversed(self) -> Line:
        return Line(self.end, self.start)


@dataclass(frozen=True)
class Arc:
    """
    Circular arc about ``center``, swept from ``start_angle`` to ``end_angle``.

    For counterclockwise arcs ``end_angle > start_angle``; for clockwise arcs
    ``end_angle < start_angle``. The sweep never exceeds one full turn.
    """

    center: complex
    radius: float
    start_angle: float
    end_angle: float
    orientation: Orientation = Orientation.COUNTERCLOCKWISE

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise PainleveDomainError("Arc radius must be positive", details={"radius": self.radius})
        sweep = self.end_angle - self.start_angle
        if abs(sweep) > TWO_PI + 1e-12:
            raise PainleveDomainError("Arc sweeps more than one turn", details={"sweep": sweep})
        if sweep == 0.0 or math.copysign(1.0, sweep) != self.orientation.sign:
            raise PainleveDomainError(
                "Arc angles disagree with orientation",
                details={
                    "start_angle": self.start_angle,
                    "end_angle": self.end_angle,
                    "orientation": self.orientation.value,
                },
            )

    @property
    def length(self) -> float:
        return self.radius * abs(self.end_angle - self.start_angle)

    def angle(self, s: float) -> float:
        if s >= self.length:
            return self.end_angle
        return self.start_angle + self.orientation.sign * s / self.radius

    @property
    def start_point(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.start_angle)

    @property
    def end_point(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.end_angle)

    def point(self, s: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.angle(s))

    def tangent(self, s: float) -> complex:
        # dt/ds with dθ = ±ds/r, i.e. dt = i r e^{iθ} dθ
        return 1j * self.orientation.sign * cmath.exp(1j * self.angle(s))

    def split(self, s: float) -> tuple[Optional[Arc], Optional[Arc]]:
        if s >= self.length * (1.0 - SPLIT_TOL):
            return self, None
        if s <= 0.0:
            return None, self
        cut = self.angle(s)
        head = None
        tail = None
        if cut != self.start_angle:
            head = Arc(self.center, self.radius, self.start_angle, cut, self.orientation)
        if cut != self.end_angle:
            tail = Arc(self.center, self.radius, cut, self.end_angle, self.orientation)
        return head, tail

    def reversed(self) -> Arc:
        return Arc(self.center, self.radius, self.end_angle, self.start_angle, self.orientation.flipped())


PathSegment = Union[Line, Arc]


# ---------------------------------------------------------------------------
# Step control and checkpoints
# ---------------------------------------------------------------------------

SUPPORTED_METHODS = ("RK45", "DOP853")


@dataclass(frozen=True)
class StepControl:
    """
    Tolerances and step-size limits for one integration.

    Attributes:
        rel_tol: Relative local error tolerance
        abs_tol: Absolute local error tolerance
        h_init: First trial step (arclength units)
        h_min: Smallest acceptable step; anything below is a step underflow
        h_max: Largest step
        max_steps: Step budget for a segment (or a whole navigated solve)
        method: Embedded Runge-Kutta pair, ``RK45`` (Dormand-Prince 5(4)) or ``DOP853``
    """

    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    h_init: float = 1e-3
    h_min: float = 1e-12
    h_max: float = 0.1
    max_steps: int = 200_000
    method: str = "RK45"

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise PainleveConfigurationError(
                "Tolerances must be positive",
                details={"parameter": "rel_tol/abs_tol", "value": (self.rel_tol, self.abs_tol), "valid_range": "> 0"},
            )
        if not (0.0 < self.h_min <= self.h_init <= self.h_max):
            raise PainleveConfigurationError(
                "Step sizes must satisfy 0 < h_min <= h_init <= h_max",
                details={
                    "parameter": "h_min/h_init/h_max",
                    "value": (self.h_min, self.h_init, self.h_max),
                    "valid_range": "0 < h_min <= h_init <= h_max",
                },
            )
        if self.max_steps < 1:
            raise PainleveConfigurationError(
                "max_steps must be at least 1",
                details={"parameter": "max_steps", "value": self.max_steps, "valid_range": ">= 1"},
            )
        if self.method not in SUPPORTED_METHODS:
            raise PainleveConfigurationError(
                f"Unknown integration method {self.method!r}",
                details={"parameter": "method", "value": self.method, "valid_range": list(SUPPORTED_METHODS)},
            )

    def tightened(self, factor: float) -> StepControl:
        """Return a copy with both tolerances divided by ``factor``."""
        return StepControl(
            rel_tol=self.rel_tol / factor,
            abs_tol=self.abs_tol / factor,
            h_init=self.h_init,
            h_min=self.h_min,
            h_max=self.h_max,
            max_steps=self.max_steps,
            method=self.method,
        )


@dataclass(frozen=True)
class Checkpoint:
    """One accepted integration step, in y-picture values."""

    t: complex
    y: complex
    yp: complex
    arclength: float
    segment_index: int = 0

    @classmethod
    def from_state(cls, state: State, arclength: float, segment_index: int = 0) -> Checkpoint:
        y, yp = state.y_picture()
        return cls(state.t, y, yp, arclength, segment_index)

    def to_state(self) -> PainleveState:
        return PainleveState(self.t, self.y, self.yp)


# ---------------------------------------------------------------------------
# Poles and solve records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoleEvent:
    """
    A detected movable pole and the detour that avoided it.

    Attributes:
        location: Estimated pole position t₀
        residue: Estimated Laurent coefficient a in y ≈ a/(t − t₀)
        detected_at: t at which |y| crossed the detection threshold
        detour_radius: Radius of the semicircle used to pass the pole
        uncertainty: Spread of the refined location estimates
        orientation: Sense of the detour arc
    """

    location: complex
    residue: complex
    detected_at: complex
    detour_radius: float
    uncertainty: float = 0.0
    orientation: Orientation = Orientation.COUNTERCLOCKWISE

    def __post_init__(self) -> None:
        if not self.detour_radius > 0.0:
            raise PainleveDomainError("Detour radius must be positive", details={"radius": self.detour_radius})

    @property
    def residue_deviation(self) -> float:
        """Distance of the residue from the nearest of +1 and −1."""
        return min(abs(self.residue - 1.0), abs(self.residue + 1.0))


class TerminationReason(str, Enum):
    """Why an integration stopped."""

    PATH_COMPLETE = "PathComplete"
    WATCHER_ABORT = "WatcherAbort"
    STEP_UNDERFLOW = "StepUnderflow"
    MAX_STEPS_EXCEEDED = "MaxStepsExceeded"
    ZERO_DENOMINATOR = "ZeroDenominator"


@dataclass
class SolveRecord:
    """
    Complete trace of one integration.

    Attributes:
        initial: State the integration started from
        checkpoints: Accepted steps, arclength strictly increasing
        poles: Pole events in order of detection
        events: Watcher events as short strings, in order
        termination: Why the integration stopped
        path: Segments actually traversed; checkpoint ``segment_index`` points here
        reason: Payload of the watcher abort, if any
        metadata: Free-form run metadata (step counts, settings)
    """

    initial: PainleveState
    checkpoints: list[Checkpoint] = field(default_factory=list)
    poles: list[PoleEvent] = field(default_factory=list)
    events: list[str] = field(default_factory=list)
    termination: TerminationReason = TerminationReason.PATH_COMPLETE
    path: list[PathSegment] = field(default_factory=list)
    reason: Any = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def final(self) -> Optional[Checkpoint]:
        return self.checkpoints[-1] if self.checkpoints else None

    @property
    def step_count(self) -> int:
        return len(self.checkpoints)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


class ClassificationKind(str, Enum):
    POLE_CASCADE = "PoleCascade"
    STABLE_OSCILLATION = "StableOscillation"
    SEPARATRIX_CANDIDATE = "SeparatrixCandidate"
    UNDECIDED = "Undecided"


class DepartureSide(str, Enum):
    DEPARTS_ABOVE = "DepartsAbove"
    DEPARTS_BELOW = "DepartsBelow"
    STILL_TRACKING = "StillTracking"


@dataclass(frozen=True)
class Classification:
    """Asymptotic behavior of a solve and where it was decided."""

    kind: ClassificationKind
    decided_at: complex
    pole_count: int

    def __post_init__(self) -> None:
        if self.pole_count < 0:
            raise PainleveDomainError("pole_count must be non-negative", details={"pole_count": self.pole_count})

    @property
    def is_generic(self) -> bool:
        return self.kind in (ClassificationKind.POLE_CASCADE, ClassificationKind.STABLE_OSCILLATION)


# ---------------------------------------------------------------------------
# Eigenvalues
# ---------------------------------------------------------------------------


class EigenvalueTag(str, Enum):
    INITIAL_SLOPE = "InitialSlope"
    INITIAL_VALUE = "InitialValue"
    TOY_MODEL = "ToyModel"


_SLUGS = {
    EigenvalueTag.INITIAL_SLOPE: "slope",
    EigenvalueTag.INITIAL_VALUE: "value",
    EigenvalueTag.TOY_MODEL: "toy",
}


@dataclass(frozen=True)
class EigenvalueKind:
    """
    Which eigenvalue problem is being solved.

    Attributes:
        tag: InitialSlope (vary y'(0), hold y(0)), InitialValue (vary y(0),
             hold y'(0)) or ToyModel (y' = cos(πty), vary y(0))
        fixed_datum: The held initial condition, None for the toy model
    """

    tag: EigenvalueTag
    fixed_datum: Optional[float] = None

    def __post_init__(self) -> None:
        if self.tag is EigenvalueTag.TOY_MODEL:
            return
        if self.fixed_datum is None or not math.isfinite(self.fixed_datum):
            raise PainleveConfigurationError(
                f"{self.tag.value} requires a finite fixed datum",
                details={"parameter": "fixed_datum", "value": self.fixed_datum, "valid_range": "finite real"},
            )
        if self.tag is EigenvalueTag.INITIAL_SLOPE and self.fixed_datum == 0.0:
            raise PainleveConfigurationError(
                "InitialSlope requires y(0) != 0",
                details={"parameter": "fixed_datum", "value": self.fixed_datum, "valid_range": "!= 0"},
            )

    @classmethod
    def slope(cls, y0: float = 1.0) -> EigenvalueKind:
        return cls(EigenvalueTag.INITIAL_SLOPE, y0)

    @classmethod
    def value(cls, yp0: float = 0.0) -> EigenvalueKind:
        return cls(EigenvalueTag.INITIAL_VALUE, yp0)

    @classmethod
    def toy(cls) -> EigenvalueKind:
        return cls(EigenvalueTag.TOY_MODEL, None)

    @property
    def slug(self) -> str:
        return _SLUGS[self.tag]

    @property
    def is_painleve(self) -> bool:
        return self.tag is not EigenvalueTag.TOY_MODEL

    @property
    def exponent(self) -> float:
        """Growth exponent of the eigenvalues in n."""
        return 0.75 if self.tag is EigenvalueTag.INITIAL_SLOPE else 0.5

    def initial_data(self, value: float) -> tuple[float, float]:
        """Physical (y(0), y'(0)) for the trial eigenvalue ``value``."""
        if self.tag is EigenvalueTag.INITIAL_SLOPE:
            return float(self.fixed_datum or 0.0), value
        if self.tag is EigenvalueTag.INITIAL_VALUE:
            return value, float(self.fixed_datum or 0.0)
        return value, 1.0


@dataclass(frozen=True)
class EigenvalueRecord:
    """
    One converged eigenvalue.

    Attributes:
        kind: Eigenvalue problem
        n: Index, 1-based, ordered by |value|
        value: Midpoint of the final bracket
        bracket_width: Width of the final bracket
        pole_count: Real-axis pole pairs passed before the separatrix starts tracking
        residual_diagnostics: Run metadata (iterations, stage switch, flags)
    """

    kind: EigenvalueKind
    n: int
    value: float
    bracket_width: float
    pole_count: int = 0
    residual_diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PainleveDomainError("Eigenvalue index must be at least 1", details={"n": self.n})

    @property
    def flagged(self) -> bool:
        return bool(self.residual_diagnostics.get("tolerance_unreachable", False))


# ---------------------------------------------------------------------------
# Asymptotics and audit
# ---------------------------------------------------------------------------


@dataclass
class ExtrapolationResult:
    """
    Richardson tableau and its limit estimate.

    ``tableau[k]`` is column k: column 0 is the input sequence and column k has
    the tail terms up to 1/n^{k·power} eliminated.
    """

    limit: float
    order: int
    tableau: list[list[float]]
    stability_estimate: float
    power: float = 1.0
    metadata: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class WkbParams:
    """Coupling g, deformation exponent ε and level n of H = ½p² + g x²(ix)^ε."""

    g: float
    epsilon: float
    n: int

    def __post_init__(self) -> None:
        if not self.g > 0.0:
            raise PainleveDomainError("WKB coupling g must be positive", details={"g": self.g})
        if not self.epsilon >= 0.0:
            raise PainleveDomainError("WKB exponent epsilon must be non-negative", details={"epsilon": self.epsilon})
        if self.n < 1:
            raise PainleveDomainError("WKB level n must be at least 1", details={"n": self.n})


@dataclass(frozen=True)
class AuditSample:
    x: complex
    H: complex
    I: complex
    ratio: float


@dataclass
class AuditRecord:
    """Energy functional and action integral sampled along a complex ray."""

    n: int
    ray_angle: float
    samples: list[AuditSample]
    H0: complex
    metadata: dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Instrumentation
# ---------------------------------------------------------------------------


@dataclass
class TimingMetrics:
    """
    Timing of one solver operation (a solve, a bisection, a scan).

    Attributes:
        operation: Operation name, e.g. ``"bisect"`` or ``"scan"``
        start_time: Start timestamp from time.time()
        end_time: End timestamp
        duration: Seconds
        success: Whether the operation completed
        error_type: Exception class name on failure
        step_count: Accepted integrator steps, when known
        pole_count: Poles detoured, when known
    """

    operation: str
    start_time: float
    end_time: float
    duration: float
    success: bool
    error_type: Optional[str] = None
    step_count: int = 0
    pole_count: int = 0

    @property
    def duration_ms(self) -> float:
        return self.duration * 1000

    def is_slow(self, threshold_s: float = 60.0) -> bool:
        return self.duration > threshold_s


__all__ = [
    "Arc",
    "AuditRecord",
    "AuditSample",
    "Checkpoint",
    "Classification",
    "ClassificationKind",
    "DepartureSide",
    "EigenvalueKind",
    "EigenvalueRecord",
    "EigenvalueTag",
    "ExtrapolationResult",
    "Line",
    "Orientation",
    "PainleveState",
    "PathSegment",
    "PoleEvent",
    "SolveRecord",
    "State",
    "StepControl",
    "TerminationReason",
    "TimingMetrics",
    "UState",
    "WkbParams",
    "is_finite_complex",
]
