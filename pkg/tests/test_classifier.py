"""Tests for the asymptotic classifier on synthetic and real solves."""

import pytest

from painleve_separatrix.eigensolver import SolverSettings, classify_value
from painleve_separatrix.exceptions import NeverTrackedError, PainleveConfigurationError
from painleve_separatrix.models import Checkpoint, ClassificationKind, DepartureSide, EigenvalueKind, PoleEvent
from painleve_separatrix.solver import (
    BehaviourTracker,
    ClassifierSettings,
    DepartureTracker,
    axis_distance,
    classify,
    count_poles,
    deviation_sign,
    in_tube,
    replay,
    tracking_stretch,
)

from .conftest import CASCADE_SLOPE, OSCILLATION_SLOPE


def _axis_pole(d, residue=1.0):
    return PoleEvent(complex(-d), complex(residue), complex(-d + 0.05), 0.1)


@pytest.mark.unit
class TestGeometry:
    def test_axis_distance(self):
        assert axis_distance(-3.5 + 0j) == 3.5
        assert axis_distance(-3.5 + 0.1j) is None

    def test_tube(self):
        assert in_tube(4.0, 8.0, 0.5)
        assert in_tube(4.0, 9.9, 0.5)
        assert not in_tube(4.0, 10.5, 0.5)
        assert in_tube(0.2, 0.8, 0.5)

    def test_settings_validation(self):
        with pytest.raises(PainleveConfigurationError):
            ClassifierSettings(horizon=0.0)
        with pytest.raises(PainleveConfigurationError):
            ClassifierSettings(cascade_cap=0)


@pytest.mark.unit
class TestDepartureSide:
    def test_departs_above(self, tracking_profile):
        assert deviation_sign(tracking_profile(6.0, side=1.0)) is DepartureSide.DEPARTS_ABOVE

    def test_departs_below(self, tracking_profile):
        assert deviation_sign(tracking_profile(6.0, side=-1.0)) is DepartureSide.DEPARTS_BELOW

    def test_still_tracking(self, tracking_profile):
        assert deviation_sign(tracking_profile(25.0)) is DepartureSide.STILL_TRACKING

    def test_never_tracked(self, oscillation_profile):
        with pytest.raises(NeverTrackedError):
            deviation_sign(oscillation_profile())

    def test_wider_tube_delays_departure(self, tracking_profile):
        record = tracking_profile(6.0, side=1.0)
        narrow = tracking_stretch(record)
        assert 5.9 <= narrow.end <= 6.0
        assert deviation_sign(record, tube_width=5.0) is DepartureSide.STILL_TRACKING

    def test_stop_on_departure(self, tracking_profile):
        record = tracking_profile(6.0, side=1.0)
        tracker = DepartureTracker(ClassifierSettings(), stop_on_departure=True)
        reasons = [tracker.observe_checkpoint(cp) for cp in record.checkpoints]
        assert reasons.count("departed") == 1
        assert tracker.result() is DepartureSide.DEPARTS_ABOVE

    def test_off_axis_checkpoints_ignored(self, tracking_profile):
        record = tracking_profile(25.0)
        tracker = DepartureTracker(ClassifierSettings())
        shifted = Checkpoint(-2.0 + 0.1j, 100.0 + 0j, 0j, 0.0)
        for checkpoint in record.checkpoints[:10] + [shifted] + record.checkpoints[10:]:
            tracker.observe_checkpoint(checkpoint)
        assert tracker.result() is DepartureSide.STILL_TRACKING


@pytest.mark.unit
class TestBehaviour:
    def test_oscillation(self, oscillation_profile):
        classification = classify(oscillation_profile())
        assert classification.kind is ClassificationKind.STABLE_OSCILLATION
        assert classification.pole_count == 0
        assert -classification.decided_at.real < 20.0

    def test_cascade_from_pole_density(self, make_axis_record):
        poles = [_axis_pole(0.5 + 0.6 * k) for k in range(12)]
        record = make_axis_record([2.0 * 0.05 * k + 3.0 for k in range(201)], poles=poles)
        classification = classify(record)
        assert classification.kind is ClassificationKind.POLE_CASCADE
        assert classification.pole_count == ClassifierSettings().cascade_cap

    def test_cascade_cap_raises_threshold(self, make_axis_record):
        poles = [_axis_pole(0.5 + 0.6 * k) for k in range(9)]
        record = make_axis_record([2.0 * 0.05 * k + 3.0 for k in range(201)], poles=poles)
        assert classify(record, ClassifierSettings(cascade_cap=20)).kind is not ClassificationKind.POLE_CASCADE

    def test_separatrix_candidate(self, tracking_profile):
        classification = classify(tracking_profile(25.0))
        assert classification.kind is ClassificationKind.SEPARATRIX_CANDIDATE
        assert classification.decided_at == 0

    def test_undecided_when_short(self, make_axis_record):
        record = make_axis_record([5.0 + 0.1 * k for k in range(20)])
        assert classify(record).kind is ClassificationKind.UNDECIDED

    def test_tracker_is_sticky(self, oscillation_profile):
        tracker = BehaviourTracker(ClassifierSettings())
        replay(oscillation_profile(), tracker)
        assert tracker.decision is not None
        assert tracker.observe_pole(_axis_pole(30.0)) == ClassificationKind.STABLE_OSCILLATION.value


@pytest.mark.unit
class TestCountPoles:
    def test_pair_before_tracking(self, make_axis_record):
        ys = [3.0] * 41 + [2.0 * 0.05 * k for k in range(41, 401)]
        poles = [_axis_pole(0.7), _axis_pole(1.4, -1.0), _axis_pole(12.0)]
        assert count_poles(make_axis_record(ys, poles=poles)) == 1

    def test_unpaired_leading_pole(self, make_axis_record):
        # a start below the axis crosses one pole before the pairs
        ys = [-3.0] * 21 + [3.0] * 40 + [2.0 * 0.05 * k for k in range(61, 401)]
        poles = [_axis_pole(1.0, -1.0), _axis_pole(1.6), _axis_pole(2.4, -1.0)]
        assert count_poles(make_axis_record(ys, poles=poles)) == 1

    @pytest.mark.parametrize("pairs", [1, 2, 6])
    def test_pairs_match_index_law(self, make_axis_record, pairs):
        onset = 80 * pairs + 40
        ys = [3.0] * onset + [2.0 * 0.05 * k for k in range(onset, onset + 400)]
        poles = [_axis_pole(1.0 + 2.0 * k + 0.5 * (k % 2), (-1.0) ** k) for k in range(2 * pairs)]
        assert count_poles(make_axis_record(ys, poles=poles)) == pairs

    def test_no_poles(self, tracking_profile):
        assert count_poles(tracking_profile(25.0)) == 0


@pytest.mark.integration
@pytest.mark.timeout(600)
class TestClassifyRealSolves:
    def test_cascade(self):
        classification, record = classify_value(EigenvalueKind.slope(), CASCADE_SLOPE, SolverSettings())
        assert classification.kind is ClassificationKind.POLE_CASCADE
        assert record.poles

    def test_oscillation(self):
        classification, _ = classify_value(EigenvalueKind.slope(), OSCILLATION_SLOPE, SolverSettings())
        assert classification.kind is ClassificationKind.STABLE_OSCILLATION

    @pytest.mark.slow
    @pytest.mark.timeout(1800)
    def test_oscillation_between_b4_and_b5(self):
        classification, _ = classify_value(EigenvalueKind.slope(), 12.1720921, SolverSettings().for_index(5))
        assert classification.kind is ClassificationKind.STABLE_OSCILLATION
