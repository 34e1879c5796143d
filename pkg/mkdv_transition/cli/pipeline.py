"""
End-to-end comparison of the transition-region asymptotics against the reference simulator.

One simulation is stepped through every requested time and sampled at its snapshots; there is no
per-time fan-out. Rows are ordered by (t, s), so repeated runs merge identically.
"""

import logging
import math
from typing import Dict, List, Optional

import numpy as np
from returns.result import Failure, Result, Success

from ..core.base_models import StageError, validation_failure
from ..core.problem_types import PhiVariant, Stage
from ..models.delta_models import PhaseAtOne
from ..models.painleve_models import PIISolution
from ..models.report_models import ComparisonReport, ComparisonRow, CompareOptions, VariantSummary
from ..models.scattering_models import InitialProfile
from ..models.simulation_models import SimConfig
from ..models.transition_models import TransitionSweep
from ..solvers.mkdv_sim import evolve, spectral_sample
from ..solvers.painleve2 import pii_interpolate
from ..solvers.transition_asymptotics import transition_sweep

logger = logging.getLogger(__name__)


def dedupe_times(tlist: List[float]) -> tuple[List[float], List[str]]:
    """Sorted distinct times plus a warning when duplicates were dropped."""
    times = sorted(set(float(t) for t in tlist))
    warnings = []
    if len(times) != len(tlist):
        message = f"duplicate t values removed: {list(tlist)} -> {times}"
        logger.warning(message)
        warnings.append(message)
    return times, warnings


def decay_slope(sup_err: Dict[float, float]) -> Optional[float]:
    """Least-squares slope of log sup_err against log t."""
    times = sorted(sup_err)
    if len(times) < 2 or any(sup_err[t] <= 0 for t in times):
        return None
    return float(np.polyfit(np.log(times), np.log([sup_err[t] for t in times]), 1)[0])


def leading_error(q_sim: float, t: float, s: float, pii: PIISolution, phi0: float) -> float:
    """Error of (q_sim + 1)(3t)^(1/3) against u(s)·cos φ₀.

    Relative when the leading coefficient is nonzero; absolute when u(s)·cos φ₀ vanishes, which is the
    case for the ζ → -ζ, ζ → 1/ζ symmetric data where φ₀ = ±π/2.
    """
    u, _, _ = pii_interpolate(pii, s)
    target = u * math.cos(phi0)
    measured = (q_sim + 1.0) * (3.0 * t) ** (1.0 / 3.0)
    if abs(target) < 1e-8:
        return abs(measured - target)
    return abs(measured - target) / abs(target)


def _summary(
    variant: PhiVariant, phase: PhaseAtOne, sweep: TransitionSweep, q_sim: np.ndarray, pii: PIISolution
) -> VariantSummary:
    sup_err: Dict[float, float] = {}
    for point, value in zip(sweep.results, q_sim):
        sup_err[point.t] = max(sup_err.get(point.t, 0.0), abs(point.q_leading - value))

    t_last = max(p.t for p in sweep.results)
    last = [(p, v) for p, v in zip(sweep.results, q_sim) if p.t == t_last]
    centre, value = min(last, key=lambda pair: abs(pair[0].s))
    return VariantSummary(
        variant=variant,
        phi0=phase.phase(variant),
        sup_err=sup_err,
        slope=decay_slope(sup_err),
        leading_error=leading_error(float(value), t_last, centre.s, pii, phase.phase(variant)),
    )


def compare_asymptotics(
    profile: InitialProfile,
    phase: PhaseAtOne,
    pii: PIISolution,
    sim_config: SimConfig,
    options: Optional[CompareOptions] = None,
) -> Result[ComparisonReport, StageError]:
    """Evaluate q_asym on the (t, s) lattice and compare it with the simulated solution.

    One simulation provides snapshots at every t; rows are sorted by (t, s).

    Args:
        profile: Initial datum the phase data was computed from
        phase: p and both φ₀ variants
        pii: Painlevé II solution for the same p
        sim_config: Simulator settings; the frame velocity is usually -6
        options: Times, s window, band and primary variant

    Returns:
        Result containing a ComparisonReport or a StageError
    """
    options = options or CompareOptions()
    if not options.tlist:
        return validation_failure(Stage.COMPARE, "tlist is empty")
    times, warnings = dedupe_times(options.tlist)
    if times[0] <= 0:
        return validation_failure(Stage.COMPARE, "comparison times must be positive", tlist=times)

    primary = options.variant
    alternate = PhiVariant.BLASCHKE if primary == PhiVariant.INTEGRAL else PhiVariant.INTEGRAL
    sweeps: Dict[PhiVariant, TransitionSweep] = {}
    for variant in (primary, alternate):
        result = transition_sweep(times, options.swindow, phase, pii, options.band_c, options.s_points, variant)
        if isinstance(result, Failure):
            return result
        sweeps[variant] = result.unwrap()

    outside = sum(1 for p in sweeps[primary].results if not p.in_band)
    if outside:
        warnings.append(f"{outside} sweep point(s) lie outside the band C = {options.band_c:g}")

    history = evolve(profile, sim_config, times)
    if isinstance(history, Failure):
        return history
    history = history.unwrap()

    q_sim = np.empty(len(sweeps[primary].results))
    for t in times:
        idx = [i for i, p in enumerate(sweeps[primary].results) if p.t == t]
        xs = np.array([sweeps[primary].results[i].x for i in idx])
        q_sim[idx] = spectral_sample(history.at(t), xs)

    rows = [
        ComparisonRow(x=p.x, t=p.t, s=p.s, q_asym=p.q_leading, q_sim=float(v))
        for p, v in zip(sweeps[primary].results, q_sim)
    ]
    summaries = {v: _summary(v, phase, sweeps[v], q_sim, pii) for v in (primary, alternate)}
    t_last = times[-1]
    best = min(summaries, key=lambda v: summaries[v].sup_err[t_last])
    logger.info(
        "Comparison: sup error %.3g at t = %g (%s), slope %s",
        summaries[primary].sup_err[t_last], t_last, primary.value, summaries[primary].slope,
    )
    return Success(
        ComparisonReport(
            rows=rows,
            primary=summaries[primary],
            alternate=summaries[alternate],
            best_variant=best,
            phase=phase.to_payload(),
            warnings=warnings,
        )
    )
