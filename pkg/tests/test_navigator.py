"""Tests for pole estimation, detour planning and the ray navigator."""

import math

import pytest

from painleve_separatrix.exceptions import (
    DegenerateDerivativeError,
    OverlappingPolesError,
    PainleveConfigurationError,
    PoleNavigationError,
)
from painleve_separatrix.models import Arc, Line, Orientation, PainleveState, PoleEvent, SolveRecord, StepControl
from painleve_separatrix.solver import (
    NavigatorSettings,
    detect_pole,
    detour_radius,
    laurent_estimate,
    plan_detour,
    refine_pole,
    residue_check,
    solve_ray,
)

from .conftest import CASCADE_SLOPE


@pytest.mark.unit
class TestDetectPole:
    def test_below_threshold(self):
        assert detect_pole(PainleveState(0j, 5 + 0j, -25 + 0j), 10.0) is None

    def test_positive_residue(self):
        t0 = -3.0
        location, residue = detect_pole(PainleveState(t0 + 0.1 + 0j, 10 + 0j, -100 + 0j), 10.0)
        assert residue == pytest.approx(1.0)
        assert location == pytest.approx(t0)

    def test_negative_residue(self):
        t0 = -3.0
        location, residue = detect_pole(PainleveState(t0 + 0.05 + 0j, -20 + 0j, 400 + 0j), 10.0)
        assert residue == pytest.approx(-1.0)
        assert location == pytest.approx(t0)

    def test_degenerate_derivative(self):
        with pytest.raises(DegenerateDerivativeError):
            detect_pole(PainleveState(0j, 2000 + 0j, 1 + 0j), 1000.0)


@pytest.mark.unit
class TestLaurentRefinement:
    @pytest.mark.parametrize("a", [1.0, -1.0])
    @pytest.mark.parametrize("t0", [-3.0 + 0j, -1.5 + 0.4j])
    def test_three_term_series_is_exact(self, synthetic_pole, a, t0):
        checkpoint = synthetic_pole(t0, 0.01 + 0.002j, a)
        location, residue = laurent_estimate(checkpoint.t, checkpoint.y, checkpoint.yp)
        assert location == pytest.approx(t0, abs=1e-10)
        assert residue == pytest.approx(a, abs=1e-8)

    def test_refine_is_better_than_leading_order(self, synthetic_pole):
        t0 = -2.5 + 0j
        samples = [synthetic_pole(t0, tau) for tau in (0.02, 0.015, 0.01, 0.008, 0.005)]
        location, residue, spread = refine_pole(samples)
        leading, _ = detect_pole(samples[-1].to_state(), 10.0)
        assert abs(location - t0) < abs(leading - t0)
        assert residue == pytest.approx(1.0, abs=1e-6)
        assert spread >= 0.0

    def test_refine_without_usable_samples(self, synthetic_pole):
        flat = synthetic_pole(-1.0 + 0j, 0.1)
        degenerate = type(flat)(flat.t, flat.y, 0j, 0.0)
        with pytest.raises(DegenerateDerivativeError):
            refine_pole([degenerate])

    def test_detour_radius_clamped(self, navigator_settings):
        assert detour_radius(-1.001 + 0j, -1.0 + 0j, navigator_settings) == navigator_settings.min_radius
        assert detour_radius(-1.5 + 0j, -1.0 + 0j, navigator_settings) == navigator_settings.max_radius
        assert detour_radius(-1.04 + 0j, -1.0 + 0j, navigator_settings) == pytest.approx(0.08)


def _pole(location, radius=0.1, residue=1.0):
    return PoleEvent(location, residue, location + radius / 2, radius)


@pytest.mark.unit
class TestPlanDetour:
    def test_upper_semicircle(self):
        segments = plan_detour(_pole(-3 + 0j), -2.9 + 0j, direction=-1.0)
        assert len(segments) == 1
        arc = segments[0]
        assert isinstance(arc, Arc)
        assert arc.center == -3
        assert arc.radius == pytest.approx(0.1)
        assert arc.start_angle == pytest.approx(0.0)
        assert arc.end_angle == pytest.approx(math.pi)
        assert arc.point(arc.length / 2).imag > 0
        assert arc.end_point == pytest.approx(-3.1 + 0j)

    def test_lower_semicircle(self):
        arc = plan_detour(_pole(-3 + 0j), -2.9 + 0j, Orientation.CLOCKWISE)[0]
        assert arc.point(arc.length / 2).imag < 0
        assert arc.end_point == pytest.approx(-3.1 + 0j)

    def test_approach_and_resume(self):
        segments = plan_detour(_pole(-3 + 0j), -2.0 + 0j, resume_to=-4.0 + 0j)
        assert [type(s) for s in segments] == [Line, Arc, Line]
        assert segments[0].end == pytest.approx(-2.9 + 0j)
        assert segments[2].start == pytest.approx(-3.1 + 0j)
        assert segments[2].end == -4

    def test_off_axis_pole(self):
        arc = plan_detour(_pole(-3 + 0.05j), -2.0 + 0j)[-1]
        assert abs(arc.start_point.imag) < 1e-12
        assert abs(arc.end_point.imag) < 1e-12
        assert arc.end_point.real < -3.0

    def test_overlapping_poles(self):
        with pytest.raises(OverlappingPolesError):
            plan_detour(_pole(-3 + 0j), -2.9 + 0j, known_poles=[_pole(-3.15 + 0j)])

    def test_entry_inside_circle(self):
        with pytest.raises(PoleNavigationError):
            plan_detour(_pole(-3 + 0j), -2.95 + 0j)

    def test_pole_behind_entry(self):
        with pytest.raises(PoleNavigationError):
            plan_detour(_pole(-3 + 0j), -3.5 + 0j)


@pytest.mark.unit
class TestResidueCheck:
    def test_empty_record(self):
        assert residue_check(SolveRecord(initial=PainleveState(0j, 1 + 0j, 0j))) == []

    def test_deviation_from_nearest_unit(self):
        record = SolveRecord(initial=PainleveState(0j, 1 + 0j, 0j), poles=[_pole(-1 + 0j, residue=-0.999)])
        [(event, deviation)] = residue_check(record)
        assert deviation == pytest.approx(1e-3)


@pytest.mark.unit
class TestNavigatorSettings:
    def test_threshold_ordering(self):
        with pytest.raises(PainleveConfigurationError):
            NavigatorSettings(zero_threshold=0.5, zero_exit=0.1)

    def test_radius_ordering(self):
        with pytest.raises(PainleveConfigurationError):
            NavigatorSettings(min_radius=0.3, max_radius=0.2)

    def test_pole_threshold(self):
        with pytest.raises(PainleveConfigurationError):
            NavigatorSettings(pole_threshold=0.5)


@pytest.mark.integration
class TestSolveRay:
    def test_zero_extent(self, step_control):
        record = solve_ray(PainleveState(0j, 1 + 0j, 2 + 0j), 0.0, step_control)
        assert len(record.checkpoints) == 1
        assert record.checkpoints[0].t == 0

    def test_negative_extent(self, step_control):
        with pytest.raises(PainleveConfigurationError):
            solve_ray(PainleveState(0j, 1 + 0j, 2 + 0j), -1.0, step_control)

    def test_initial_checkpoint_and_order(self, loose_control):
        record = solve_ray(PainleveState(0j, 1 + 0j, 3.0 + 0j), 1.0, loose_control)
        assert record.checkpoints[0].t == 0
        arclengths = [cp.arclength for cp in record.checkpoints]
        assert all(b > a for a, b in zip(arclengths, arclengths[1:]))
        assert record.final.t == pytest.approx(-1.0)

    def test_cascade_passes_poles(self, loose_control):
        record = solve_ray(PainleveState(0j, 1 + 0j, complex(CASCADE_SLOPE)), 10.0, loose_control)
        assert record.poles
        assert -record.poles[0].location.real < 10.0
        for _, deviation in residue_check(record):
            assert deviation < 1e-3
        assert record.final.t == pytest.approx(-10.0)

    def test_pole_location_stable_in_threshold(self, step_control):
        locations = []
        for threshold in (1e2, 1e3, 1e4):
            settings = NavigatorSettings(pole_threshold=threshold)
            record = solve_ray(PainleveState(0j, 1 + 0j, complex(CASCADE_SLOPE)), 10.0, step_control, settings)
            locations.append(record.poles[0].location)
        assert max(abs(a - b) for a in locations for b in locations) < 1e-6

    def test_step_budget_ends_solve(self):
        control = StepControl(max_steps=10)
        record = solve_ray(PainleveState(0j, 1 + 0j, 2 + 0j), 5.0, control)
        assert record.termination.value == "MaxStepsExceeded"
        assert record.step_count <= 11

    def test_complex_direction(self, loose_control):
        direction = complex(math.cos(-math.pi / 4), math.sin(-math.pi / 4))
        record = solve_ray(PainleveState(0j, 1 + 0j, 3.0 + 0j), 0.5, loose_control, direction=direction)
        assert record.final.t == pytest.approx(0.5 * direction)
