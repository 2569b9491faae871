"""
Large-n asymptotics of the eigenvalue sequences.

The eigenvalues grow like b_n ~ B n^{3/4} and c_n ~ C n^{1/2}. The constants
are extracted numerically by Richardson extrapolation of value_n / n^exponent
and compared with the closed forms that follow from WKB quantization of the
sextic PT-symmetric Hamiltonian H = ½p² + g x²(ix)^ε at g = 1/8, ε = 4.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .exceptions import InsufficientLengthError, NoiseGuardError, PainleveDomainError
from .models import EigenvalueRecord, EigenvalueTag, ExtrapolationResult, WkbParams

logger = logging.getLogger(__name__)

NOISE_GUARD_ORDER = 5
HALF_POWER = 0.5

# Lanczos approximation, g = 7, nine terms
LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


# ---------------------------------------------------------------------------
# Richardson extrapolation
# ---------------------------------------------------------------------------


def _lagrange_weights(x: np.ndarray) -> np.ndarray:
    """Weights of the interpolating polynomial through (x_j, s_j) evaluated at 0."""
    weights = np.ones_like(x)
    for j in range(len(x)):
        for k in range(len(x)):
            if k != j:
                weights[j] *= x[k] / (x[k] - x[j])
    return weights


def _final_spread(column: Sequence[float]) -> float:
    tail = list(column[-3:])
    if len(tail) < 2:
        return 0.0
    return max(abs(a - b) for a in tail for b in tail)


def richardson(
    seq: Sequence[float],
    order: int,
    power: float = 1.0,
    noise: Optional[float] = None,
    *,
    indices: Optional[Iterable[int]] = None,
) -> ExtrapolationResult:
    """
    Extrapolate s_n = L + a₁/n^p + a₂/n^{2p} + … to its limit L.

    A Neville tableau on x = 1/n^p: column k eliminates the x^k term, and the
    limit is the last entry of column ``order``.

    Args:
        seq: s_1, s_2, … (or the terms at ``indices``)
        order: Number of tail terms to eliminate
        power: Correction power p
        noise: Absolute noise level of the inputs; enables the noise guard
               for orders above five
        indices: The n of each term; defaults to 1..len(seq)

    Raises:
        InsufficientLengthError: Fewer than order + 1 terms
        NoiseGuardError: The amplified input noise exceeds the projected tail term
    """
    values = [float(v) for v in seq]
    if order < 0:
        raise PainleveDomainError("order must be non-negative", details={"parameter": "order", "value": order})
    if len(values) < order + 1:
        raise InsufficientLengthError(
            f"Order {order} needs at least {order + 1} terms",
            details={"length": len(values), "order": order},
        )
    ns = list(indices) if indices is not None else list(range(1, len(values) + 1))
    if len(ns) != len(values):
        raise PainleveDomainError("indices and seq differ in length", details={"indices": len(ns), "seq": len(values)})
    x = np.array([1.0 / float(n) ** power for n in ns])

    tableau: list[list[float]] = [values]
    for k in range(1, order + 1):
        previous = tableau[-1]
        column = [
            (x[i] * previous[i + 1] - x[i + k] * previous[i]) / (x[i] - x[i + k])
            for i in range(len(previous) - 1)
        ]
        tableau.append(column)

    limit = tableau[order][-1]
    if noise is not None and order > NOISE_GUARD_ORDER:
        amplification = float(np.sum(np.abs(_lagrange_weights(x[-(order + 1):]))))
        tail = abs(tableau[order][-1] - tableau[order - 1][-1])
        if noise * amplification > tail:
            raise NoiseGuardError(
                f"Input noise overwhelms order {order}",
                details={"noise": noise, "amplification": amplification, "tail": tail, "order": order},
            )

    return ExtrapolationResult(
        limit=limit,
        order=order,
        tableau=tableau,
        stability_estimate=_final_spread(tableau[order]),
        power=power,
        metadata={"indices": ns},
    )


def fit_constant(
    eigs: Sequence[EigenvalueRecord],
    exponent: float,
    order: int,
    *,
    power: float = 1.0,
    noise: Optional[float] = None,
) -> ExtrapolationResult:
    """
    Extrapolate value_n / n^exponent over a run of eigenvalues.

    When the integer-power tableau stalls (the final-column spread grows
    from order − 1 to order), half-integer powers are tried as well. The
    better-settled of the two is returned; the diagnosis is kept in the
    result metadata.
    """
    records = sorted(eigs, key=lambda r: r.n)
    indices = [r.n for r in records]
    if any(b != a + 1 for a, b in zip(indices, indices[1:])):
        raise PainleveDomainError("Eigenvalues must have consecutive indices", details={"indices": indices})
    seq = [r.value / r.n**exponent for r in records]

    result = richardson(seq, order, power, noise, indices=indices)
    result.metadata.update({"exponent": exponent, "count": len(seq)})
    if power != 1.0 or order < 2:
        return result

    lower = richardson(seq, order - 1, power, indices=indices)
    if result.stability_estimate <= lower.stability_estimate:
        result.metadata["diagnosis"] = "integer powers settle"
        return result

    half = richardson(seq, order, HALF_POWER, noise, indices=indices)
    half.metadata.update({"exponent": exponent, "count": len(seq)})
    diagnosis = {
        "integer_limit": result.limit,
        "integer_spread": result.stability_estimate,
        "half_limit": half.limit,
        "half_spread": half.stability_estimate,
    }
    logger.debug(f"Integer tableau stalled at order {order}: {diagnosis}")
    if half.stability_estimate < result.stability_estimate:
        half.metadata["diagnosis"] = "integer powers stalled; half-integer powers settle"
        half.metadata["trial"] = diagnosis
        return half
    result.metadata["diagnosis"] = "integer powers stalled; half-integer powers no better"
    result.metadata["trial"] = diagnosis
    return result


# ---------------------------------------------------------------------------
# Gamma function and WKB
# ---------------------------------------------------------------------------


def gamma(x: float) -> float:
    """
    Γ(x) for x > 0 by the Lanczos approximation.

    Raises:
        PainleveDomainError: x ≤ 0
    """
    if not x > 0.0:
        raise PainleveDomainError("gamma is defined here for x > 0 only", details={"x": x})
    if x < 0.5:
        # reflection
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for k, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + k)
    w = z + LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * w ** (z + 0.5) * math.exp(-w) * series


def wkb_energy(p: WkbParams) -> float:
    """Leading-order WKB energy of the n-th level of H = ½p² + g x²(ix)^ε."""
    eps = p.epsilon
    prefactor = 0.5 * (2.0 * p.g) ** (2.0 / (4.0 + eps))
    kernel = (
        gamma(1.5 + 1.0 / (eps + 2.0))
        * math.sqrt(math.pi)
        * p.n
        / (math.sin(math.pi / (eps + 2.0)) * gamma(1.0 + 1.0 / (eps + 2.0)))
    )
    return prefactor * kernel ** ((2.0 * eps + 4.0) / (eps + 4.0))


def slope_from_energy(E: float) -> float:
    """b = 4√(E/2)."""
    if E < 0.0:
        raise PainleveDomainError("Energy must be non-negative", details={"E": E})
    return 4.0 * math.sqrt(E / 2.0)


def value_from_energy(E: float) -> float:
    """c = −2E^{1/3}, the inverse of E = |c|³/8."""
    if E < 0.0:
        raise PainleveDomainError("Energy must be non-negative", details={"E": E})
    return -2.0 * E ** (1.0 / 3.0)


def energy_of(record: EigenvalueRecord) -> float:
    """Schrödinger energy matched by an eigenvalue: b²/8 for slopes, |c|³/8 for values."""
    if record.kind.tag is EigenvalueTag.INITIAL_SLOPE:
        return record.value**2 / 8.0
    if record.kind.tag is EigenvalueTag.INITIAL_VALUE:
        return abs(record.value) ** 3 / 8.0
    raise PainleveDomainError("The toy model has no energy", details={"kind": record.kind.tag.value})


def _gamma_ratio() -> float:
    return math.sqrt(math.pi) * gamma(5.0 / 3.0) / gamma(7.0 / 6.0)


def analytic_B() -> float:
    return 2.0**1.5 * _gamma_ratio() ** 0.75


def analytic_C() -> float:
    return -2.0 * _gamma_ratio() ** 0.5


__all__ = [
    "analytic_B",
    "analytic_C",
    "energy_of",
    "fit_constant",
    "gamma",
    "richardson",
    "slope_from_energy",
    "value_from_energy",
    "wkb_energy",
]
