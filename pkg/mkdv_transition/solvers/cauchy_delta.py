"""
The scalar function δ(z), the Blaschke product h(z), the trace formula and the phase φ₀ at z = 1.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from returns.result import Result, Success
from scipy.integrate import quad

from ..core.base_models import StageError, numerical_failure, validation_failure
from ..core.problem_types import Stage
from ..models.delta_models import CauchyOptions, PhaseAtOne
from ..models.scattering_models import DiscreteSpectrum, ReflectionTable

logger = logging.getLogger(__name__)


def nu_of(rval: complex) -> float:
    """ν = -log(1 - |r|²)/(2π) for |r| < 1."""
    modulus = abs(complex(rval))
    if modulus >= 1.0:
        raise ValueError(f"ν is singular for |r| = {modulus} ≥ 1")
    return -math.log1p(-modulus * modulus) / (2.0 * math.pi)


def _principal(angle: float) -> float:
    reduced = math.remainder(angle, 2.0 * math.pi)
    return math.pi if reduced <= -math.pi else reduced


class _LogDensity:
    """Piecewise model of g(ζ) = log(1 - |r(ζ)|²) integrated exactly against Cauchy kernels.

    g is linear between table nodes. In the generic case the segments touching ζ = ±1 carry an
    extra 2·log|ζ ∓ 1| term. When folded only ζ > 1 is modelled and the rest of the line is
    reached through g(ζ) = g(-ζ) = g(1/ζ), which makes δ(1/z) = 1/δ(z) hold exactly.
    """

    def __init__(self, table: ReflectionTable, folded: bool):
        self.folded = folded
        self.zmax = float(np.max(np.abs(table.grid)))
        self.g_end = float(max(abs(table.log1m_r2[0]), abs(table.log1m_r2[-1])))
        self.logs: List[Tuple[float, float, float]] = []
        if folded:
            self._build_folded(table)
        else:
            self._build_direct(table)

    def _build_direct(self, table: ReflectionTable) -> None:
        grid, g = table.grid, table.log1m_r2
        a, b = grid[:-1].copy(), grid[1:].copy()
        ga, gb = g[:-1].copy(), g[1:].copy()
        if table.generic:
            for c in (-1.0, 1.0):
                hits = np.nonzero((a < c) & (c < b))[0]
                for j in hits:
                    ga[j] -= 2.0 * math.log(c - a[j])
                    gb[j] -= 2.0 * math.log(b[j] - c)
                    self.logs.extend([(float(a[j]), c, c), (c, float(b[j]), c)])
        self.a, self.b, self.ga, self.gb = a, b, ga, gb

    def _build_folded(self, table: ReflectionTable) -> None:
        keep = table.grid > 1.0
        s, gs = table.grid[keep], table.log1m_r2[keep]
        if table.generic:
            tilde = gs[0] - 2.0 * math.log(s[0] - 1.0)
            first = (tilde, tilde)
            self.logs.append((1.0, float(s[0]), 1.0))
        else:
            r1 = table.r_at_one
            g1 = math.log1p(-abs(r1) ** 2) if r1 is not None and abs(r1) < 1.0 else float(gs[0])
            first = (g1, float(gs[0]))
        self.a = np.concatenate([[1.0], s[:-1]])
        self.b = s.copy()
        self.ga = np.concatenate([[first[0]], gs[:-1]])
        self.gb = np.concatenate([[first[1]], gs[1:]])

    def _linear(self, p: complex) -> complex:
        beta = (self.gb - self.ga) / (self.b - self.a)
        at_p = self.ga + beta * (p - self.a)
        if p.imag != 0.0:
            ratio = np.log(self.b - p) - np.log(self.a - p)
        else:
            ratio = np.log(np.abs(self.b - p.real)) - np.log(np.abs(self.a - p.real))
        return complex(np.sum(beta * (self.b - self.a) + at_p * ratio))

    def _log_pieces(self, p: complex) -> complex:
        total = 0j
        for lo, hi, c in self.logs:
            if p.imag == 0.0 and p.real == c:
                # principal value: the log² terms at the excluded point cancel between the two sides
                total += math.log(hi - c) ** 2 if c == lo else -math.log(c - lo) ** 2
                continue
            if p.imag == 0.0 and lo < p.real < hi:
                raise ValueError(f"Cauchy integral requested inside the singular gap at {p}")
            weight = "alg-loga" if c == lo else "alg-logb"
            pr, pi = p.real, p.imag
            re = quad(lambda x: (x - pr) / ((x - pr) ** 2 + pi**2), lo, hi, weight=weight, wvar=(0.0, 0.0))[0]
            im = quad(lambda x: pi / ((x - pr) ** 2 + pi**2), lo, hi, weight=weight, wvar=(0.0, 0.0))[0]
            total += 2.0 * complex(re, im)
        return total

    def _raw(self, p: complex) -> complex:
        return self._linear(p) + self._log_pieces(p)

    def _fold(self, p: complex) -> complex:
        if p * p == 1:
            return 0j
        return self._raw(p) - self._raw(1.0 / p)

    def cauchy(self, p: complex) -> complex:
        """∫_ℝ g(ζ)/(ζ - p) dζ, as a principal value for real p."""
        p = complex(p)
        if not self.folded:
            return self._raw(p)
        return self._fold(p) - self._fold(-p)

    def integral(self) -> float:
        """∫_ℝ g(ζ) dζ over the direct model."""
        linear = float(np.sum(0.5 * (self.ga + self.gb) * (self.b - self.a)))
        logs = sum(2.0 * (hi - lo) * (math.log(hi - lo) - 1.0) for lo, hi, _ in self.logs)
        return linear + logs

    def tail_bound(self, p: complex) -> float:
        """Bound on the omitted tails assuming |r| ~ ζ⁻² beyond the table."""
        reach = max(abs(p), 1.0 / abs(p)) if p != 0 else math.inf
        gap = max(self.zmax - reach, 0.5 * self.zmax)
        return 4.0 * self.g_end * self.zmax / (3.0 * gap)


def _is_symmetric(table: ReflectionTable, tol: float = 1e-8) -> bool:
    grid, g = table.grid, table.log1m_r2
    if grid.size < 4 or not np.any(grid > 1.0):
        return False
    for targets in (-grid, 1.0 / grid):
        idx = np.clip(np.searchsorted(grid, targets), 0, grid.size - 1)
        idx = np.where(
            (idx > 0) & (np.abs(grid[idx - 1] - targets) < np.abs(grid[idx] - targets)), idx - 1, idx
        )
        if np.any(np.abs(grid[idx] - targets) > 1e-9 * np.abs(targets)):
            return False
        if np.any(np.abs(g[idx] - g) > tol * (1.0 + np.abs(g))):
            return False
    return True


def _density(table: ReflectionTable, options: Optional[CauchyOptions] = None) -> _LogDensity:
    options = options or CauchyOptions()
    folded = _is_symmetric(table) if options.fold is None else options.fold
    return _LogDensity(table, folded)


def cauchy_log_integral(table: ReflectionTable, z: complex, options: Optional[CauchyOptions] = None) -> complex:
    """∫ log(1 - |r(ζ)|²)/(ζ - z) dζ over the table support."""
    return _density(table, options).cauchy(complex(z))


def delta_at(z: complex, table: ReflectionTable, options: Optional[CauchyOptions] = None) -> complex:
    """δ(z) = exp(-i∫ν(ζ)/(ζ - z) dζ) for z off the real axis."""
    z = complex(z)
    if z.imag == 0.0:
        raise ValueError(f"δ is evaluated off the real axis only, got z = {z}")
    return complex(np.exp(0.5j / math.pi * cauchy_log_integral(table, z, options)))


def delta_jump_ratio(z0: float, eps: float, table: ReflectionTable, options: Optional[CauchyOptions] = None) -> complex:
    """δ(z₀ + iε)/δ(z₀ - iε), which tends to 1/(1 - |r(z₀)|²) as ε → 0."""
    if eps <= 0:
        raise ValueError(f"ε must be positive, got {eps}")
    density = _density(table, options)
    upper = density.cauchy(complex(z0, eps))
    lower = density.cauchy(complex(z0, -eps))
    return complex(np.exp(0.5j / math.pi * (upper - lower)))


def blaschke_h(z: complex, spectrum: DiscreteSpectrum) -> complex:
    """h(z) = Π (z - ηₙ)/(z - conj ηₙ) over the listed zeros of a."""
    z = complex(z)
    value = 1 + 0j
    for eta in spectrum.etas:
        if abs(z - np.conj(eta)) < 1e-14:
            raise ValueError(f"h has a pole at z = {z}")
        value *= (z - eta) / (z - np.conj(eta))
    return complex(value)


def trace_reconstruct_a(
    z: complex, table: ReflectionTable, spectrum: DiscreteSpectrum, options: Optional[CauchyOptions] = None
) -> complex:
    """a(z) = h(z)·exp(-(1/2πi)∫log(1 - |r|²)/(ζ - z) dζ) for Im z > 0."""
    z = complex(z)
    if z.imag <= 0:
        raise ValueError(f"the trace formula holds in the upper half plane, got z = {z}")
    return blaschke_h(z, spectrum) * delta_at(z, table, options)


def mass_from_spectrum(table: ReflectionTable, spectrum: DiscreteSpectrum) -> float:
    """Conserved mass from the scattering data: -2·Σ Im ηₙ + ∫ν(ζ) dζ."""
    continuous = -_LogDensity(table, folded=False).integral() / (2.0 * math.pi)
    return float(-2.0 * np.sum(spectrum.etas.imag) + continuous)


def _coarsened(table: ReflectionTable, stride: int) -> ReflectionTable:
    """Every ``stride``-th node, counted outward from ζ = ±1 so symmetric grids stay symmetric."""
    grid = table.grid
    last = grid.size - 1
    after_singular = {int(np.searchsorted(grid, c)) for c in (-1.0, 1.0) if grid[0] < c < grid[-1]}
    before_singular = {i - 1 for i in after_singular}
    anchors = {0, last} | {min(max(i, 0), last) for i in after_singular | before_singular}
    if grid[0] < 0.0 < grid[-1]:
        anchors |= {int(np.searchsorted(grid, 0.0)) + d for d in (-1, 0)}
    ordered = sorted(anchors)
    keep = set(ordered)
    for lo, hi in zip(ordered[:-1], ordered[1:]):
        if hi in before_singular and lo not in after_singular:
            keep.update(range(hi, lo, -stride))
        else:
            keep.update(range(lo, hi, stride))
    idx = np.array(sorted(keep))
    return table.model_copy(update={"grid": grid[idx], "r": table.r[idx], "log1m_r2": table.log1m_r2[idx]})


def phi0_and_amp(
    table: ReflectionTable,
    spectrum: Optional[DiscreteSpectrum] = None,
    generic: Optional[bool] = None,
    options: Optional[CauchyOptions] = None,
) -> Result[PhaseAtOne, StageError]:
    """Amplitude p = |r(1)| and the phase φ₀ = arg conj r(1) - (1/π)·PV∫log(1 - |r|²)/(ζ - 1) dζ.

    Args:
        table: Reflection table with the limit r(1)
        spectrum: Zeros of a, used for the Blaschke variant φ₀ + 2·arg h(1)
        generic: Overrides the table's generic flag
        options: Quadrature controls

    Returns:
        Result containing PhaseAtOne or a StageError
    """
    options = options or CauchyOptions()
    spectrum = spectrum if spectrum is not None else DiscreteSpectrum()
    if table.r_at_one is None:
        return validation_failure(Stage.PHASE, "reflection table carries no r(1) limit")
    r1 = complex(table.r_at_one)
    p = abs(r1)
    if p > 1.0 + options.clamp_tol:
        return validation_failure(Stage.PHASE, f"|r(1)| = {p} exceeds 1", r_at_one=[r1.real, r1.imag])
    generic = table.generic if generic is None else generic
    if generic != table.generic:
        table = table.model_copy(update={"generic": generic})

    clamped = False
    if p >= 1.0 - options.clamp_tol and p != 1.0:
        logger.warning("|r(1)| = %.12g within %.1g of 1: clamped to the generic boundary", p, options.clamp_tol)
        p, clamped, generic = 1.0, True, True

    try:
        density = _density(table, options)
        pv = density.cauchy(1 + 0j).real
        tail = density.tail_bound(1 + 0j)
        history = [pv]
        for level in range(1, options.refinements + 1):
            coarse = _coarsened(table, 2**level)
            history.append(_LogDensity(coarse, density.folded).cauchy(1 + 0j).real)
    except (ValueError, FloatingPointError) as e:
        return numerical_failure(Stage.PHASE, f"principal-value quadrature failed: {e}")

    if tail > options.tail_tol:
        logger.warning("Cauchy tail bound %.3g exceeds %.3g", tail, options.tail_tol)
    logger.debug("PV history at ζ = 1: %s", history)
    # φ₀ moves by step/π between the table and its first coarsening
    step = abs(history[1] - pv)
    if not math.isfinite(pv) or step > options.pv_tol:
        return numerical_failure(
            Stage.PHASE, "principal-value integral at ζ = 1 does not settle under refinement", history=history
        )

    if p < 1e-14:
        phi0 = 0.0
        phi0_blaschke = 0.0
    else:
        phi0 = _principal(math.atan2(-r1.imag, r1.real) - pv / math.pi)
        phi0_blaschke = _principal(phi0 + 2.0 * np.angle(blaschke_h(1.0, spectrum)))
    logger.info("p = %.12g, φ₀ = %.12g, φ₀ (Blaschke) = %.12g", p, phi0, phi0_blaschke)
    return Success(
        PhaseAtOne(
            p=min(p, 1.0),
            phi0=phi0,
            generic=generic,
            phi0_blaschke=phi0_blaschke,
            pv_integral=pv,
            tail_bound=tail,
            clamped=clamped,
            refinement_history=history,
        )
    )
