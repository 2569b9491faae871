"""
Adaptive contour integration.

A first-order complex system ``dz/dt = f(t, z)`` is integrated along a line
or arc by reparameterizing with the real arclength ``s`` of the segment,
``dz/ds = f(t(s), z) · dt/ds``, and handing that real-time problem to one of
scipy's embedded Runge-Kutta steppers (``RK45`` = Dormand-Prince 5(4), or
``DOP853``). The stepper is advanced one accepted step at a time so that a
watcher can inspect every step and stop the integration.
"""

from __future__ import annotations

import logging
from typing import Any, Callable, Optional, Sequence

import numpy as np
from scipy.integrate import DOP853, RK45

from ..exceptions import (
    MaxStepsExceededError,
    NonContiguousPathError,
    PainleveDomainError,
    StepUnderflowError,
    WatcherAbort,
    ZeroDenominatorError,
)
from ..models import Checkpoint, PainleveState, PathSegment, SolveRecord, State, StepControl, TerminationReason
from ..ode import VectorField, painleve_system

logger = logging.getLogger(__name__)

# Returns None to continue, anything else to stop with that reason
Watcher = Callable[[State, Checkpoint], Optional[Any]]

_STEPPERS = {"RK45": RK45, "DOP853": DOP853}

CONTIGUITY_TOL = 1e-9


def _close(a: complex, b: complex) -> bool:
    return abs(a - b) <= CONTIGUITY_TOL * max(1.0, abs(a), abs(b))


def integrate_segment(
    state: State,
    segment: PathSegment,
    control: StepControl,
    rhs: Optional[VectorField] = None,
    watch: Optional[Watcher] = None,
    *,
    arclength_offset: float = 0.0,
    segment_index: int = 0,
) -> tuple[State, list[Checkpoint]]:
    """
    Integrate ``state`` along one segment.

    Args:
        state: Starting point; ``state.t`` must be the segment's start point
        segment: Line or Arc to follow
        control: Tolerances, step limits, step budget and stepper method
        rhs: Vector field ``f(t, z)``; defaults to the P-IV system
        watch: Called after every accepted step with the new state and its
               checkpoint; a non-None return aborts the segment
        arclength_offset: Arclength already covered before this segment
        segment_index: Index stored in the produced checkpoints

    Returns:
        (final state, checkpoints of every accepted step)

    Raises:
        WatcherAbort: The watcher returned a reason; carries state and samples
        StepUnderflowError: The step size fell below ``h_min`` or the stepper failed
        MaxStepsExceededError: More than ``max_steps`` accepted steps
        ZeroDenominatorError: The vector field hit a zero of y mid-step
    """
    if not _close(state.t, segment.start_point):
        raise PainleveDomainError(
            "State does not sit at the segment start",
            details={"t": str(state.t), "segment_start": str(segment.start_point)},
        )
    if not state.is_finite():
        raise PainleveDomainError("Initial state is not finite", details={"state": repr(state)})

    field = rhs if rhs is not None else painleve_system()
    length = segment.length
    state_type = type(state)

    def param_rhs(s: float, z: np.ndarray) -> np.ndarray:
        return field(segment.point(s), z) * segment.tangent(s)

    stepper = _STEPPERS[control.method](
        param_rhs,
        0.0,
        state.as_vector(),
        length,
        rtol=control.rel_tol,
        atol=control.abs_tol,
        first_step=min(control.h_init, length),
        max_step=control.h_max,
    )

    samples: list[Checkpoint] = []
    current = state
    steps = 0
    with np.errstate(over="ignore", invalid="ignore"):
        while stepper.status == "running":
            try:
                message = stepper.step()
            except ZeroDenominatorError as e:
                raise ZeroDenominatorError(e.message, details=e.details, state=current, samples=samples) from e

            if stepper.status == "failed":
                raise StepUnderflowError(
                    f"Stepper failed: {message}",
                    details={"t": str(current.t), "h_min": control.h_min},
                    state=current,
                    samples=samples,
                )
            if stepper.status == "running" and stepper.step_size < control.h_min:
                raise StepUnderflowError(
                    "Step size fell below h_min",
                    details={"t": str(current.t), "h": stepper.step_size, "h_min": control.h_min},
                    state=current,
                    samples=samples,
                )

            steps += 1
            if steps > control.max_steps:
                raise MaxStepsExceededError(
                    "Step budget exhausted",
                    details={"t": str(current.t), "max_steps": control.max_steps},
                    state=current,
                    samples=samples,
                )

            t = segment.end_point if stepper.status == "finished" else segment.point(stepper.t)
            current = state_type.from_vector(t, np.array(stepper.y))
            checkpoint = Checkpoint.from_state(current, arclength_offset + stepper.t, segment_index)
            samples.append(checkpoint)

            if watch is not None:
                reason = watch(current, checkpoint)
                if reason is not None:
                    raise WatcherAbort(
                        "Watcher requested termination",
                        reason=reason,
                        state=current,
                        samples=samples,
                        details={"t": str(t), "arclength": checkpoint.arclength},
                    )

    return current, samples


def integrate_path(
    initial: PainleveState,
    path: Sequence[PathSegment],
    control: StepControl,
    rhs: Optional[VectorField] = None,
    watch: Optional[Watcher] = None,
) -> SolveRecord:
    """
    Integrate along a chain of contiguous segments.

    Numerical failures do not raise; they end the record with the matching
    termination reason. The initial state is not itself a checkpoint.

    Raises:
        NonContiguousPathError: A segment does not start where the previous one
            (or the initial state) ends
    """
    anchor = initial.t
    for index, segment in enumerate(path):
        if not _close(anchor, segment.start_point):
            raise NonContiguousPathError(
                f"Segment {index} does not start where the path left off",
                details={"segment": index, "expected": str(anchor), "found": str(segment.start_point)},
            )
        anchor = segment.end_point

    record = SolveRecord(initial=initial, path=list(path))
    state: State = initial
    offset = 0.0

    for index, segment in enumerate(path):
        try:
            state, samples = integrate_segment(
                state,
                segment,
                control,
                rhs,
                watch,
                arclength_offset=offset,
                segment_index=index,
            )
        except WatcherAbort as abort:
            record.checkpoints.extend(abort.samples)
            record.termination = TerminationReason.WATCHER_ABORT
            record.reason = abort.reason
            record.events.append(f"watcher_abort:{abort.reason}")
            break
        except ZeroDenominatorError as e:
            record.checkpoints.extend(e.samples)
            record.termination = TerminationReason.ZERO_DENOMINATOR
            record.events.append("zero_denominator")
            break
        except StepUnderflowError as e:
            record.checkpoints.extend(e.samples)
            record.termination = TerminationReason.STEP_UNDERFLOW
            record.events.append("step_underflow")
            break
        except MaxStepsExceededError as e:
            record.checkpoints.extend(e.samples)
            record.termination = TerminationReason.MAX_STEPS_EXCEEDED
            record.events.append("max_steps_exceeded")
            break
        record.checkpoints.extend(samples)
        offset += segment.length

    record.metadata["steps"] = record.step_count
    logger.debug(
        f"Path of {len(path)} segment(s) ended with {record.termination.value} after {record.step_count} steps"
    )
    return record


__all__ = ["Watcher", "integrate_path", "integrate_segment"]
