"""
Solver Instrumentation
======================

Timing and workload metrics for solver operations: single solves, bracket
scans, bisections and whole eigenvalue sequences.

Each recorded operation becomes a ``TimingMetrics`` entry carrying its
duration, success flag, accepted integrator steps and detoured poles. The
summary aggregates them per operation, reports duration percentiles and adds
a few plain-language insights (slow bisections, step-heavy solves, failures).

Typical usage:

    >>> instrumentation = SolveInstrumentation()
    >>> start = instrumentation.start_timer("bisect")
    >>> record = bisect(kind, (3.0, 3.25), 1e-8)
    >>> instrumentation.record_timing("bisect", start, success=True)
    >>> summary = instrumentation.get_performance_summary()
    >>> summary["session_metrics"]["total_operations"]
    1

The CLI attaches the summary to its JSON output when ``--instrument`` is set.
"""

import logging
import time
from typing import Any, Optional

import numpy as np

from .models import SolveRecord, TimingMetrics

logger = logging.getLogger(__name__)

SLOW_OPERATION_S = 60.0
STEP_HEAVY_SOLVE = 50_000


class SolveInstrumentation:
    """
    Collects timing metrics for solver operations.

    Attributes:
        timing_metrics: Every recorded TimingMetrics, in recording order
        session_start_time: When this instrumentation session began
        operation_durations: Durations grouped by operation name
    """

    def __init__(self) -> None:
        self.timing_metrics: list[TimingMetrics] = []
        self.session_start_time = time.time()
        self.operation_durations: dict[str, list[float]] = {}

    def start_timer(self, operation: str) -> float:  # noqa: ARG002
        """Return the start timestamp for ``operation``."""
        return time.time()

    def record_timing(
        self,
        operation: str,
        start_time: float,
        success: bool = True,
        error_type: Optional[str] = None,
        step_count: int = 0,
        pole_count: int = 0,
    ) -> TimingMetrics:
        """
        Record a completed operation.

        Args:
            operation: Operation name, e.g. ``"solve"``, ``"scan"``, ``"bisect"``
            start_time: Timestamp from start_timer()
            success: Whether the operation completed
            error_type: Exception class name on failure
            step_count: Accepted integrator steps
            pole_count: Poles detoured

        Returns:
            The recorded TimingMetrics
        """
        end_time = time.time()
        duration = end_time - start_time

        metric = TimingMetrics(
            operation=operation,
            start_time=start_time,
            end_time=end_time,
            duration=duration,
            success=success,
            error_type=error_type,
            step_count=step_count,
            pole_count=pole_count,
        )
        self.timing_metrics.append(metric)
        self.operation_durations.setdefault(operation, []).append(duration)

        logger.debug(f"📊 {operation}: {metric.duration_ms:.1f}ms (success: {success}, steps: {step_count})")
        if metric.is_slow(SLOW_OPERATION_S):
            logger.warning(f"{operation} took {duration:.1f}s")
        return metric

    def record_solve(self, start_time: float, record: SolveRecord, operation: str = "solve") -> TimingMetrics:
        """Record a finished solve, taking step and pole counts from the record."""
        return self.record_timing(
            operation,
            start_time,
            success=True,
            step_count=record.step_count,
            pole_count=len(record.poles),
        )

    def get_performance_summary(self) -> dict[str, Any]:
        """
        Aggregate all recorded metrics.

        Returns:
            Dictionary with ``session_metrics``, ``operation_breakdown``,
            ``duration_percentiles`` and ``performance_insights``; or
            ``{"error": ...}`` when nothing was recorded.
        """
        if not self.timing_metrics:
            return {"error": "No timing metrics recorded"}

        total_session_time = time.time() - self.session_start_time

        operation_stats: dict[str, dict[str, Any]] = {}
        for operation, durations in self.operation_durations.items():
            metrics = [m for m in self.timing_metrics if m.operation == operation]
            operation_stats[operation] = {
                "count": len(durations),
                "total_time": float(np.sum(durations)),
                "avg_time": float(np.mean(durations)),
                "min_time": float(np.min(durations)),
                "max_time": float(np.max(durations)),
                "success_rate": sum(1 for m in metrics if m.success) / len(metrics),
                "total_steps": sum(m.step_count for m in metrics),
                "total_poles": sum(m.pole_count for m in metrics),
            }

        successful = [m.duration for m in self.timing_metrics if m.success]
        if successful:
            p50, p90, p95, p99 = np.percentile(successful, [50, 90, 95, 99])
            percentiles = {"p50": float(p50), "p90": float(p90), "p95": float(p95), "p99": float(p99)}
        else:
            percentiles = {"p50": 0.0, "p90": 0.0, "p95": 0.0, "p99": 0.0}

        return {
            "session_metrics": {
                "total_session_time": total_session_time,
                "total_operations": len(self.timing_metrics),
                "successful_operations": sum(1 for m in self.timing_metrics if m.success),
                "failed_operations": sum(1 for m in self.timing_metrics if not m.success),
                "total_steps": sum(m.step_count for m in self.timing_metrics),
                "total_poles": sum(m.pole_count for m in self.timing_metrics),
            },
            "operation_breakdown": operation_stats,
            "duration_percentiles": percentiles,
            "performance_insights": self._generate_performance_insights(operation_stats),
        }

    def _generate_performance_insights(self, operation_stats: dict[str, Any]) -> list[str]:
        insights = []

        for operation, stats in operation_stats.items():
            if stats["avg_time"] > SLOW_OPERATION_S:
                insights.append(f"{operation} averaging {stats['avg_time']:.1f}s - consider looser tolerances")

        heavy = [m for m in self.timing_metrics if m.step_count > STEP_HEAVY_SOLVE]
        if heavy:
            insights.append(f"{len(heavy)} operation(s) used more than {STEP_HEAVY_SOLVE} steps - check step limits")

        failed = sum(1 for m in self.timing_metrics if not m.success)
        if failed == 0:
            insights.append("All operations completed")
        else:
            rate = failed / len(self.timing_metrics)
            insights.append(f"Failure rate: {rate * 100:.1f}%")

        return insights


__all__ = ["SolveInstrumentation"]
