"""
End-to-end reproduction of the published eigenvalues and constants.

Every test here solves full eigenvalue sequences; the sequences are solved
once per module and shared.
"""

import pytest

from painleve_separatrix.asymptotics import energy_of, fit_constant, wkb_energy
from painleve_separatrix.audit import DEFAULT_ANGLES, audit_ray
from painleve_separatrix.eigensolver import SolverSettings, solve_sequence, toy_eigenvalues
from painleve_separatrix.models import EigenvalueKind, WkbParams
from painleve_separatrix.reference import (
    B_CONSTANT,
    C_CONSTANT,
    CONSTANT_TOLERANCE,
    ENERGY_RATIO_BAND,
    SLOPE_EIGENVALUES,
    TOY_CONSTANT,
    TOY_RELATIVE_TOLERANCE,
    VALUE_EIGENVALUES,
    eigenvalue_tolerance,
)

RESIDUE_TOLERANCE = 1e-3
WORKERS = 4


@pytest.fixture(scope="module")
def slope_sequence():
    return solve_sequence(EigenvalueKind.slope(), 12, 1e-8, SolverSettings(workers=WORKERS))


@pytest.fixture(scope="module")
def value_sequence():
    return solve_sequence(EigenvalueKind.value(), 15, 1e-8, SolverSettings(workers=WORKERS))


def _by_index(records):
    return {r.n: r for r in records}


def _energy_ratios(records, levels):
    by_n = _by_index(records)
    return [energy_of(by_n[n]) / wkb_energy(WkbParams(0.125, 4.0, n)) for n in levels]


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.timeout(7200)
class TestSlopeFamily:
    def test_published_values(self, slope_sequence):
        by_n = _by_index(slope_sequence)
        for n, published in sorted(SLOPE_EIGENVALUES.items()):
            assert by_n[n].value == pytest.approx(published, abs=eigenvalue_tolerance(n)), f"b_{n}"

    def test_extrapolated_constant(self, slope_sequence):
        result = fit_constant(slope_sequence, 0.75, 5)
        assert result.limit == pytest.approx(B_CONSTANT, abs=CONSTANT_TOLERANCE)

    def test_pole_pairs(self, slope_sequence):
        assert [r.pole_count for r in slope_sequence] == [n // 2 for n in range(1, 13)]

    def test_residues(self, slope_sequence):
        for record in slope_sequence:
            assert record.residual_diagnostics["residue_max_deviation"] < RESIDUE_TOLERANCE, f"b_{record.n}"

    def test_energy_ratio_approaches_one(self, slope_sequence):
        ratios = _energy_ratios(slope_sequence, range(4, 13))
        low, high = ENERGY_RATIO_BAND
        assert low <= ratios[-1] <= high
        gaps = [abs(r - 1.0) for r in ratios]
        assert gaps == sorted(gaps, reverse=True)

    def test_audit_ratio_falls_with_index(self, slope_sequence):
        by_n = _by_index(slope_sequence)
        ratios = []
        for n in (2, 4, 8, 12):
            audit = audit_ray(n, EigenvalueKind.slope(), DEFAULT_ANGLES[0], 1.0, by_n[n].value)
            assert abs(audit.samples[-1].x) == pytest.approx(1.0)
            ratios.append(audit.samples[-1].ratio)
        assert all(later < earlier for earlier, later in zip(ratios, ratios[1:]))


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.timeout(7200)
class TestValueFamily:
    def test_published_values(self, value_sequence):
        by_n = _by_index(value_sequence)
        for n, published in sorted(VALUE_EIGENVALUES.items()):
            assert by_n[n].value == pytest.approx(published, abs=eigenvalue_tolerance(n)), f"c_{n}"

    def test_extrapolated_constant(self, value_sequence):
        result = fit_constant(value_sequence, 0.5, 4)
        assert result.limit == pytest.approx(C_CONSTANT, abs=CONSTANT_TOLERANCE)

    def test_pole_pairs(self, value_sequence):
        head = [r for r in value_sequence if r.n <= 12]
        assert [r.pole_count for r in head] == [n // 2 for n in range(1, 13)]

    def test_residues(self, value_sequence):
        for record in value_sequence:
            assert record.residual_diagnostics["residue_max_deviation"] < RESIDUE_TOLERANCE, f"c_{record.n}"

    def test_energy_ratio_approaches_one(self, value_sequence):
        ratios = _energy_ratios(value_sequence, range(4, 13))
        low, high = ENERGY_RATIO_BAND
        assert low <= ratios[-1] <= high
        gaps = [abs(r - 1.0) for r in ratios]
        assert gaps == sorted(gaps, reverse=True)


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.timeout(1800)
def test_toy_constant_by_fourth_order_richardson():
    records = toy_eigenvalues(10, settings=SolverSettings(workers=WORKERS))
    result = fit_constant(records, 0.5, 4)
    assert result.limit == pytest.approx(TOY_CONSTANT, rel=TOY_RELATIVE_TOLERANCE)
