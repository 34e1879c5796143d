"""
Leading-order transition-region solution q = -1 + (3t)^(-1/3)·u(s)·cos φ₀ near the ray x = -6t.
"""

import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np
from returns.result import Failure, Result, Success

from ..core.base_models import StageError, validation_failure
from ..core.problem_types import PhiVariant, Stage
from ..models.delta_models import PhaseAtOne
from ..models.painleve_models import PIISolution
from ..models.transition_models import AsymptoticResult, FirstOrderMatrices, TransitionSweep
from .painleve2 import pii_interpolate

logger = logging.getLogger(__name__)

# Exponent ε of the remainder t^(-1/3-ε), 0 < ε < 1/9; only reported.
ERROR_EXPONENT = 1.0 / 18.0
SIGMA2 = np.array([[0.0, -1j], [1j, 0.0]])


def s_of(x: float, t: float) -> float:
    """s = (1/3)(x/t + 6)(3t)^(2/3)."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return (x / t + 6.0) * (3.0 * t) ** (2.0 / 3.0) / 3.0


def x_of(s: float, t: float) -> float:
    """Inverse of ``s_of`` at fixed t: x = -6t + s(3t)^(1/3)."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return -6.0 * t + s * (3.0 * t) ** (1.0 / 3.0)


def _check_inputs(s: float, phase: PhaseAtOne, pii: PIISolution) -> Optional[Failure]:
    if not pii.contains(s):
        lo, hi = pii.s_range
        return validation_failure(Stage.ASYMPTOTE, f"s = {s:.6g} outside the Painlevé grid [{lo:g}, {hi:g}]", s=s)
    if abs(phase.p - pii.p) > 1e-8:
        return validation_failure(
            Stage.ASYMPTOTE,
            "phase data and Painlevé solution come from different amplitudes",
            phase_p=phase.p,
            pii_p=pii.p,
        )
    return None


def q_transition(
    x: float,
    t: float,
    phase: PhaseAtOne,
    pii: PIISolution,
    variant: PhiVariant = PhiVariant.INTEGRAL,
    band_c: Optional[float] = None,
) -> Result[AsymptoticResult, StageError]:
    """Leading-order q(x, t) in the transition band.

    Args:
        x: Space
        t: Time, t > 0
        phase: p and φ₀ from the same initial data as ``pii``
        pii: Ablowitz–Segur solution for p
        variant: Which φ₀ to use
        band_c: Half-width C of the band |x/t + 6|·t^(2/3) < C, only used to set ``in_band``

    Returns:
        Result containing an AsymptoticResult or a StageError
    """
    if t <= 0:
        return validation_failure(Stage.ASYMPTOTE, f"t must be positive, got {t}")
    s = s_of(x, t)
    failure = _check_inputs(s, phase, pii)
    if failure is not None:
        return failure

    u, _, _ = pii_interpolate(pii, s)
    amplitude = (3.0 * t) ** (-1.0 / 3.0)
    in_band = True if band_c is None else abs(x / t + 6.0) * t ** (2.0 / 3.0) < band_c
    return Success(
        AsymptoticResult(
            x=x,
            t=t,
            s=s,
            q_leading=-1.0 + amplitude * u * math.cos(phase.phase(variant)),
            amplitude_factor=amplitude,
            error_scale=t ** (-1.0 / 3.0 - ERROR_EXPONENT),
            in_band=in_band,
        )
    )


def first_order_matrices(
    s: float, t: float, phase: PhaseAtOne, pii: PIISolution, variant: PhiVariant = PhiVariant.INTEGRAL
) -> Result[FirstOrderMatrices, StageError]:
    """E₁ and M⁽³⁾(0) of the expansion in powers of (3t)^(-1/3)."""
    if t <= 0:
        return validation_failure(Stage.ASYMPTOTE, f"t must be positive, got {t}")
    failure = _check_inputs(s, phase, pii)
    if failure is not None:
        return failure
    u, _, tail = pii_interpolate(pii, s)
    eps = (3.0 * t) ** (-1.0 / 3.0)
    phi = phase.phase(variant)
    uc, us = u * math.cos(phi), u * math.sin(phi)
    e1 = eps * np.array([[1j * tail, 1j * uc], [-1j * uc, -1j * tail]], dtype=complex)
    m3 = np.eye(2, dtype=complex) + eps * np.array([[0.0, us], [us, 0.0]], dtype=complex)
    return Success(FirstOrderMatrices(e1=e1, m3_at_0=m3))


def reconstruct_from_matrices(matrices: FirstOrderMatrices) -> complex:
    """q ≈ i(σ₂·M⁽³⁾(0)⁻¹ + E₁)₂₁."""
    combined = SIGMA2 @ np.linalg.inv(matrices.m3_at_0) + matrices.e1
    return complex(1j * combined[1, 0])


def transition_sweep(
    tlist: Iterable[float],
    swindow: Sequence[float],
    phase: PhaseAtOne,
    pii: PIISolution,
    band_c: float = 3.0,
    s_points: int = 11,
    variant: PhiVariant = PhiVariant.INTEGRAL,
) -> Result[TransitionSweep, StageError]:
    """q_asym on the (t, s) lattice tlist × linspace(swindow, s_points), rows sorted by (t, s)."""
    times = sorted(set(float(t) for t in tlist))
    if not times or times[0] <= 0:
        return validation_failure(Stage.ASYMPTOTE, "tlist must contain positive times", tlist=list(times))
    s_lo, s_hi = (float(v) for v in swindow)
    if s_lo > s_hi or s_points < 1:
        return validation_failure(Stage.ASYMPTOTE, "invalid s window", swindow=[s_lo, s_hi], s_points=s_points)

    results = []
    for t in times:
        for s in np.linspace(s_lo, s_hi, s_points):
            result = q_transition(x_of(float(s), t), t, phase, pii, variant, band_c)
            if isinstance(result, Failure):
                return result
            point = result.unwrap()
            if not point.in_band:
                logger.warning("(x, t) = (%.6g, %.6g) lies outside the band C = %g", point.x, t, band_c)
            results.append(point)
    return Success(TransitionSweep(results=results))
