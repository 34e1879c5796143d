"""
Direct scattering transform of a kink-type profile: Jost solutions, a(z), b(z), r(z) and the discrete spectrum.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from returns.result import Failure, Result, Success
from scipy.integrate import cumulative_simpson, simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from ..core.base_models import StageError, numerical_failure, validation_failure
from ..core.problem_types import Stage
from ..models.scattering_models import (
    DiscreteSpectrum,
    InitialProfile,
    JostOptions,
    JostPair,
    Pole,
    ReflectionLimit,
    ReflectionTable,
    RootScanOptions,
    ScatteringData,
    ScatteringSample,
    SymmetryReport,
    ZGridOptions,
)
from .spectral_plane import soliton_velocity

logger = logging.getLogger(__name__)

_GAUSS_OFFSET = math.sqrt(3.0) / 6.0
_PLUS, _MINUS = "plus", "minus"


class _MagnusGrid:
    """Cell data of the fourth-order Magnus propagator for μ_x = (ikσ₃ + qσ₁)μ - iλμσ₃."""

    def __init__(self, profile: InitialProfile, substeps: int = 1):
        self.x = profile.x
        self.substeps = substeps
        n_fine = (profile.x.size - 1) * substeps + 1
        fine = np.linspace(profile.x[0], profile.x[-1], n_fine)
        self.h = float(fine[1] - fine[0])
        spline = CubicSpline(profile.x, profile.q)
        left = fine[:-1]
        q1 = spline(left + (0.5 - _GAUSS_OFFSET) * self.h)
        q2 = spline(left + (0.5 + _GAUSS_OFFSET) * self.h)
        self.ax = 0.5 * self.h * (q1 + q2)
        self.ay = -_GAUSS_OFFSET * self.h**2 * (q1 - q2)

    @property
    def n_cells(self) -> int:
        return self.ax.size

    def node_index(self, x0: float) -> int:
        return int(np.argmin(np.abs(self.x - x0)))


def _uniformize(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    inv = 1.0 / z
    return 0.5 * (z - inv), 0.5 * (z + inv)


def _normalization(z: np.ndarray, side: str, column: int) -> np.ndarray:
    """One column of E± = I ∓ σ₂/z for each z, shape (m, 2)."""
    sign = 1.0 if side == _PLUS else -1.0
    v = np.empty(z.shape + (2,), dtype=complex)
    if column == 0:
        v[:, 0] = 1.0
        v[:, 1] = -sign * 1j / z
    else:
        v[:, 0] = sign * 1j / z
        v[:, 1] = 1.0
    return v


def _sweep(grid: _MagnusGrid, z: np.ndarray, side: str, column: int, stop: int, store: bool = False) -> np.ndarray:
    """Propagate one column of μ_side from its normalization end to profile node ``stop``.

    μ₋ columns are advanced forward from x_min, μ₊ columns backward from x_max. With ``store`` the
    column is returned at every profile node it passes, ordered by increasing x.
    """
    lam, k = _uniformize(z)
    s = 1.0 if column == 0 else -1.0
    h = grid.h
    az = 1j * h * k
    az2 = az * az
    v = _normalization(z, side, column)

    sub = grid.substeps
    if side == _MINUS:
        cells = range(0, stop * sub)
        direction = 1.0
    else:
        cells = range(grid.n_cells - 1, stop * sub - 1, -1)
        direction = -1.0
    phase = np.exp(-direction * 1j * lam * s * h)

    saved = [v.copy()] if store else []
    for count, c in enumerate(cells, start=1):
        ax = grid.ax[c]
        ay = grid.ay[c] * k
        w2 = ax * ax + ay * ay + az2
        w = np.sqrt(w2 + 0j)
        small = np.abs(w) < 1e-6
        cosh = np.cosh(w)
        sinhc = np.where(small, 1.0 + w2 / 6.0, np.sinh(w) / np.where(small, 1.0, w))
        ds = direction * sinhc
        v0, v1 = v[:, 0], v[:, 1]
        n0 = cosh * v0 + ds * (az * v0 + (ax - 1j * ay) * v1)
        n1 = cosh * v1 + ds * ((ax + 1j * ay) * v0 - az * v1)
        v = np.stack((phase * n0, phase * n1), axis=-1)
        if store and count % sub == 0:
            saved.append(v.copy())

    if not store:
        return v
    stacked = np.stack(saved)
    return stacked if side == _MINUS else stacked[::-1]


def _det(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    return u[..., 0] * w[..., 1] - u[..., 1] * w[..., 0]


def _check_profile(profile: InitialProfile, options: JostOptions) -> Optional[Failure]:
    left, right = profile.boundary_residuals()
    if max(left, right) > options.truncation_tol:
        return validation_failure(
            Stage.SCATTER,
            "profile is not admissible: boundary values differ from ∓1 beyond the truncation tolerance",
            left_residual=left,
            right_residual=right,
            truncation_tol=options.truncation_tol,
        )
    x0 = options.match_point
    if not profile.x[0] < x0 < profile.x[-1]:
        return validation_failure(Stage.SCATTER, f"match point {x0} lies outside the profile grid")
    return None


def _coefficients(
    grid: _MagnusGrid, z: np.ndarray, i0: int, with_b: bool = True
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """a(z) and, for real z, b(z) from Wronskians at the profile node i0."""
    plus1 = _sweep(grid, z, _PLUS, 0, i0)
    minus2 = _sweep(grid, z, _MINUS, 1, i0)
    scale = 1.0 - z**-2
    a = _det(plus1, minus2) / scale
    if not with_b:
        return a, None
    minus1 = _sweep(grid, z, _MINUS, 0, i0)
    lam, _ = _uniformize(z)
    b = np.exp(2j * lam * grid.x[i0]) * _det(minus1, plus1) / scale
    return a, b


def _as_z_array(z: Sequence[complex] | np.ndarray | complex) -> np.ndarray:
    return np.atleast_1d(np.asarray(z, dtype=complex))


def _distance_to_singular(z: np.ndarray) -> float:
    return float(np.min(np.minimum(np.abs(z), np.minimum(np.abs(z - 1.0), np.abs(z + 1.0)))))


def jost_solutions(
    profile: InitialProfile, z: complex, options: Optional[JostOptions] = None
) -> Result[JostPair, StageError]:
    """Modified Jost matrices μ±(z; x) on the profile grid.

    For z off the real axis only the columns analytic at z are propagated (μ₊,₁ and μ₋,₂ in C₊,
    μ₊,₂ and μ₋,₁ in C₋); the others are NaN. At z = ±1 the propagation is the same with λ = 0.

    Args:
        profile: Sampled initial datum
        z: Spectral point, z ≠ 0
        options: Sweep controls

    Returns:
        Result containing a JostPair or a StageError
    """
    options = options or JostOptions()
    z = complex(z)
    if z == 0:
        return validation_failure(Stage.SCATTER, "z = 0 is excluded")
    failure = _check_profile(profile, options)
    if failure is not None:
        return failure

    try:
        grid = _MagnusGrid(profile, options.substeps)
        last = profile.x.size - 1
        zs = np.array([z])
        if abs(z.imag) < 1e-14:
            wanted = {(_PLUS, 0), (_PLUS, 1), (_MINUS, 0), (_MINUS, 1)}
        elif z.imag > 0:
            wanted = {(_PLUS, 0), (_MINUS, 1)}
        else:
            wanted = {(_PLUS, 1), (_MINUS, 0)}

        shape = (profile.x.size, 2, 2)
        mu = {_PLUS: np.full(shape, np.nan + 0j), _MINUS: np.full(shape, np.nan + 0j)}
        for side, column in wanted:
            stop = last if side == _MINUS else 0
            mu[side][:, :, column] = _sweep(grid, zs, side, column, stop, store=True)[:, 0, :]

        pair = JostPair(
            z=z, x=profile.x, mu_plus=mu[_PLUS], mu_minus=mu[_MINUS], analytic_only=len(wanted) < 4
        )
        if not all(np.all(np.isfinite(mu[side][:, :, column])) for side, column in wanted):
            return numerical_failure(Stage.SCATTER, "Jost sweep overflowed", z=str(z))
        return Success(pair)
    except Exception as e:
        return numerical_failure(Stage.SCATTER, f"Error computing Jost solutions: {e}", z=str(z))


def scattering_ab(
    profile: InitialProfile, z: float, options: Optional[JostOptions] = None
) -> Result[ScatteringSample, StageError]:
    """a(z), b(z) and r(z) at one real z off {0, ±1}."""
    options = options or JostOptions()
    if isinstance(z, complex):
        if abs(z.imag) > 0:
            return validation_failure(Stage.SCATTER, "a, b and r are defined on the real axis here", z=str(z))
        z = z.real
    z = float(z)
    if min(abs(z), abs(z - 1.0), abs(z + 1.0)) < options.edge_margin:
        return validation_failure(Stage.SCATTER, f"z = {z} is at a singular point of the scattering map", z=z)
    failure = _check_profile(profile, options)
    if failure is not None:
        return failure
    try:
        grid = _MagnusGrid(profile, options.substeps)
        a, b = _coefficients(grid, np.array([z], dtype=complex), grid.node_index(options.match_point))
        return Success(ScatteringSample(z=z, a=complex(a[0]), b=complex(b[0])))
    except Exception as e:
        return numerical_failure(Stage.SCATTER, f"Error computing a and b: {e}", z=z)


def a_coefficient(
    profile: InitialProfile, z: Sequence[complex] | np.ndarray, options: Optional[JostOptions] = None
) -> Result[np.ndarray, StageError]:
    """a(z) for z in the closed upper half plane, vectorized."""
    options = options or JostOptions()
    zs = _as_z_array(z)
    if np.any(zs.imag < 0):
        return validation_failure(Stage.SCATTER, "a(z) extends analytically to the upper half plane only")
    if _distance_to_singular(zs) < options.edge_margin:
        return validation_failure(Stage.SCATTER, "z too close to 0 or ±1")
    failure = _check_profile(profile, options)
    if failure is not None:
        return failure
    try:
        grid = _MagnusGrid(profile, options.substeps)
        a, _ = _coefficients(grid, zs, grid.node_index(options.match_point), with_b=False)
        return Success(a)
    except Exception as e:
        return numerical_failure(Stage.SCATTER, f"Error computing a(z): {e}")


def mass_from_a(
    profile: InitialProfile, z: complex = 200j, options: Optional[JostOptions] = None
) -> Result[complex, StageError]:
    """Mass estimate (a(z) - 1)·z/i from the large-z expansion a = 1 + im/z + O(z⁻²)."""
    return a_coefficient(profile, [z], options).map(lambda a: complex((a[0] - 1.0) * z / 1j))


def default_zgrid(options: Optional[ZGridOptions] = None) -> np.ndarray:
    """Sorted real grid ζ = ±exp(±w), graded geometrically in |w| towards ±1.

    The grid is closed under ζ → -ζ and ζ → 1/ζ, which keeps the principal-value sums at ζ = 1 symmetric.
    """
    options = options or ZGridOptions()
    w_max = math.log(options.zmax)
    graded = [options.margin]
    while graded[-1] * options.ratio < min(options.switch, w_max):
        graded.append(graded[-1] * options.ratio)
    n_uniform = max(1, math.ceil((w_max - graded[-1]) / options.step))
    uniform = np.linspace(graded[-1], w_max, n_uniform + 1)[1:]
    w = np.concatenate([np.asarray(graded), uniform])
    positive = np.concatenate([np.exp(-w[::-1]), np.exp(w)])
    return np.concatenate([-positive[::-1], positive])


def _richardson(samples: List[complex]) -> Tuple[complex, float]:
    """Extrapolate samples S(h), S(h/2), ... with an even expansion in h to h = 0."""
    table = list(samples)
    before = table[-1]
    for level in range(1, len(table)):
        before = table[-1]
        factor = 4.0**level - 1.0
        for i in range(len(table) - 1, level - 1, -1):
            table[i] = table[i] + (table[i] - table[i - 1]) / factor
    return table[-1], abs(table[-1] - before)


def reflection_at_one(
    profile: InitialProfile, options: Optional[JostOptions] = None, scan: Optional[RootScanOptions] = None
) -> Result[ReflectionLimit, StageError]:
    """r(±1) by Richardson extrapolation of the averages (r(1 + h) + r(1 - h))/2."""
    options = options or JostOptions()
    scan = scan or RootScanOptions()
    failure = _check_profile(profile, options)
    if failure is not None:
        return failure

    offsets = [scan.richardson_h / 2.0**j for j in range(scan.richardson_levels)]
    hs = np.asarray(offsets)
    zs = np.concatenate([1.0 + hs, 1.0 - hs, -1.0 - hs, -1.0 + hs]).astype(complex)
    try:
        grid = _MagnusGrid(profile, options.substeps)
        a, b = _coefficients(grid, zs, grid.node_index(options.match_point))
    except Exception as e:
        return numerical_failure(Stage.SCATTER, f"Error evaluating r near ±1: {e}")

    r = (b / a).reshape(4, -1)
    at_one = [complex(v) for v in 0.5 * (r[0] + r[1])]
    at_minus_one = [complex(v) for v in 0.5 * (r[2] + r[3])]
    r1, change1 = _richardson(at_one)
    rm1, change2 = _richardson(at_minus_one)
    change = max(change1, change2)
    logger.debug("Richardson r(1) = %s, last change %.3g", r1, change)
    if not np.isfinite(change) or change > scan.richardson_tol:
        return numerical_failure(
            Stage.SCATTER,
            "extrapolation of r at z = ±1 did not converge",
            offsets=offsets,
            samples=[[v.real, v.imag] for v in at_one],
            change=change,
        )
    return Success(
        ReflectionLimit(
            r_at_one=r1,
            r_at_minus_one=rm1,
            generic=abs(r1) > 1.0 - scan.generic_tol,
            offsets=offsets,
            samples=at_one,
            estimate_change=change,
        )
    )


def reflection_grid(
    profile: InitialProfile,
    zgrid: Optional[np.ndarray] = None,
    options: Optional[JostOptions] = None,
    scan: Optional[RootScanOptions] = None,
) -> Result[ReflectionTable, StageError]:
    """Reflection table r(ζⱼ) with log(1 - |r|²) = -2 log|a| and the limits r(±1)."""
    options = options or JostOptions()
    grid_values = default_zgrid() if zgrid is None else np.asarray(zgrid, dtype=float)
    if grid_values.ndim != 1 or grid_values.size < 2 or not np.all(np.isfinite(grid_values)):
        return validation_failure(Stage.SCATTER, "z grid must be a finite one-dimensional array")
    if np.any(np.diff(grid_values) <= 0):
        return validation_failure(Stage.SCATTER, "z grid must be strictly increasing")
    margin = _distance_to_singular(grid_values.astype(complex))
    if margin < options.edge_margin:
        return validation_failure(
            Stage.SCATTER,
            f"z grid touches 0 or ±1: margin {margin:.3g} is below edge_margin {options.edge_margin:g}",
            margin=margin,
            edge_margin=options.edge_margin,
        )
    failure = _check_profile(profile, options)
    if failure is not None:
        return failure

    try:
        grid = _MagnusGrid(profile, options.substeps)
        a, b = _coefficients(grid, grid_values.astype(complex), grid.node_index(options.match_point))
    except Exception as e:
        return numerical_failure(Stage.SCATTER, f"Error computing the reflection table: {e}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        return numerical_failure(Stage.SCATTER, "non-finite scattering coefficients on the grid")

    limits = reflection_at_one(profile, options, scan)
    if isinstance(limits, Failure):
        return limits
    limit = limits.unwrap()

    r = b / a
    defect = float(np.max(np.abs(np.abs(a) ** 2 - np.abs(b) ** 2 - 1.0) / np.maximum(1.0, np.abs(a) ** 2)))
    logger.info("Reflection table on %d points, margin %.3g, unitarity defect %.3g", r.size, margin, defect)
    try:
        table = ReflectionTable(
            grid=grid_values,
            r=r,
            log1m_r2=-2.0 * np.log(np.abs(a)),
            a=a,
            r_at_one=limit.r_at_one,
            r_at_minus_one=limit.r_at_minus_one,
            generic=limit.generic,
            margin=margin,
        )
    except ValueError as e:
        return numerical_failure(Stage.SCATTER, f"Reflection table violates |r| ≤ 1: {e}", defect=defect)
    return Success(table)


def locate_arc_zeros(a_func: Callable[[np.ndarray], np.ndarray], scan: Optional[RootScanOptions] = None) -> List[float]:
    """Angles α ∈ (0, π) where a(e^{iα}) vanishes.

    Local minima of |a| on the sample arc are bracketed and refined on g(α) = Re(a(e^{iα})·conj(d)),
    d the secant of a across the bracket, which changes sign at a simple zero.
    """
    scan = scan or RootScanOptions()
    n = scan.samples
    alphas = np.pi * (np.arange(n) + 0.5) / n
    values = np.asarray(a_func(np.exp(1j * alphas)))
    mags = np.abs(values)

    roots: List[float] = []
    for i in range(1, n - 1):
        if not (mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1]):
            continue
        lo, hi = alphas[i - 1], alphas[i + 1]
        d = values[i + 1] - values[i - 1]

        def g(alpha: float, d: complex = d) -> float:
            return float(np.real(np.asarray(a_func(np.array([np.exp(1j * alpha)])))[0] * np.conj(d)))

        g_lo = float(np.real(values[i - 1] * np.conj(d)))
        g_hi = float(np.real(values[i + 1] * np.conj(d)))
        if g_lo * g_hi > 0:
            continue
        root = lo if g_lo == 0 else (hi if g_hi == 0 else brentq(g, lo, hi, xtol=scan.xtol))
        if abs(np.asarray(a_func(np.array([np.exp(1j * root)])))[0]) >= scan.zero_tol:
            continue
        if all(abs(root - other) > 1e3 * scan.xtol for other in roots):
            roots.append(float(root))
    return sorted(roots)


def _arc_derivative(a_func: Callable[[np.ndarray], np.ndarray], eta: complex, step: float) -> complex:
    """a′(η) averaged over central differences along the tangent and the normal of the circle."""
    tangent, normal = 1j * eta, eta
    points = np.array([eta + step * tangent, eta - step * tangent, eta + step * normal, eta - step * normal])
    values = np.asarray(a_func(points))
    along = (values[0] - values[1]) / (2.0 * step * tangent)
    across = (values[2] - values[3]) / (2.0 * step * normal)
    return complex(0.5 * (along + across))


def _norming_constant(grid: _MagnusGrid, eta: complex, i0: int) -> Tuple[complex, complex]:
    """(cₙ, γₙ) with cₙ = 2η/∫|Φ₋,₂|², the integral split at x₀ through Φ₊,₁ = γΦ₋,₂."""
    zs = np.array([eta])
    lam = complex(_uniformize(zs)[0][0])
    x = grid.x
    minus2 = _sweep(grid, zs, _MINUS, 1, i0, store=True)[:, 0, :]
    plus1 = _sweep(grid, zs, _PLUS, 0, i0, store=True)[:, 0, :]
    left_x, right_x = x[: i0 + 1], x[i0:]
    phi_minus = minus2 * np.exp(-1j * lam * left_x)[:, None]
    phi_plus = plus1 * np.exp(1j * lam * right_x)[:, None]

    anchor_m, anchor_p = phi_minus[-1], phi_plus[0]
    gamma = complex(np.vdot(anchor_m, anchor_p) / np.vdot(anchor_m, anchor_m))
    left = simpson(np.sum(np.abs(phi_minus) ** 2, axis=1), x=left_x)
    right = simpson(np.sum(np.abs(phi_plus) ** 2, axis=1), x=right_x)
    total = left + right / abs(gamma) ** 2
    return 2.0 * eta / total, gamma


def discrete_spectrum(
    profile: InitialProfile, options: Optional[JostOptions] = None, scan: Optional[RootScanOptions] = None
) -> Result[DiscreteSpectrum, StageError]:
    """Zeros ηₙ of a on the upper unit semicircle with norming constants."""
    options = options or JostOptions()
    scan = scan or RootScanOptions()
    failure = _check_profile(profile, options)
    if failure is not None:
        return failure

    try:
        grid = _MagnusGrid(profile, options.substeps)
        i0 = grid.node_index(options.match_point)

        def a_func(zs: np.ndarray) -> np.ndarray:
            return _coefficients(grid, np.asarray(zs, dtype=complex), i0, with_b=False)[0]

        angles = locate_arc_zeros(a_func, scan)
        poles: List[Pole] = []
        notes: List[str] = []
        for alpha in angles:
            eta = complex(math.cos(alpha), math.sin(alpha))
            a_prime = _arc_derivative(a_func, eta, scan.derivative_step)
            if abs(a_prime) < scan.simple_tol:
                return numerical_failure(
                    Stage.SCATTER, "a has a non-simple zero on the unit circle", eta=[eta.real, eta.imag]
                )
            norming, gamma = _norming_constant(grid, eta, i0)
            self_conjugate = abs(eta.real) < 1e-9
            if self_conjugate:
                notes.append(f"zero at {eta:.12g} is its own reflection -conj(η) and is listed once")
            poles.append(
                Pole(
                    eta=eta,
                    norming=norming,
                    gamma=gamma,
                    a_prime=a_prime,
                    residue_constant=gamma / a_prime,
                    self_conjugate=self_conjugate,
                    velocity=soliton_velocity(eta),
                )
            )
        logger.info("Discrete spectrum: %d zero(s) of a on the upper unit circle", len(poles))
        return Success(DiscreteSpectrum(poles=poles, notes=notes))
    except Exception as e:
        return numerical_failure(Stage.SCATTER, f"Error locating the discrete spectrum: {e}")


def scattering_data(
    profile: InitialProfile,
    zgrid: Optional[np.ndarray] = None,
    options: Optional[JostOptions] = None,
    scan: Optional[RootScanOptions] = None,
) -> Result[ScatteringData, StageError]:
    """Reflection table, discrete spectrum and mass of a profile at t = 0."""
    table = reflection_grid(profile, zgrid, options, scan)
    if isinstance(table, Failure):
        return table
    spectrum = discrete_spectrum(profile, options, scan)
    if isinstance(spectrum, Failure):
        return spectrum
    return Success(ScatteringData(table=table.unwrap(), spectrum=spectrum.unwrap(), mass=profile.mass(), time=0.0))


def evolution_factor(z: complex | np.ndarray, t: float) -> complex | np.ndarray:
    """exp(2iλ(4k² + 2)t), the time dependence of r and of the norming constants."""
    lam, k = _uniformize(np.asarray(z, dtype=complex))
    factor = np.exp(2j * lam * (4.0 * k * k + 2.0) * t)
    return complex(factor) if factor.ndim == 0 else factor


def evolve_scattering(data: ScatteringData, t: float) -> ScatteringData:
    """Advance scattering data by time t: r and cₙ pick up exp(2iλ(4k² + 2)t), |r| and ηₙ are unchanged."""
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be finite and non-negative, got {t}")
    table = data.table
    evolved = table.model_copy(update={"r": table.r * evolution_factor(table.grid, t)})
    factors = np.atleast_1d(evolution_factor(data.spectrum.etas, t))
    norming = data.spectrum.norming_constants * factors
    poles = []
    for pole, factor, constant in zip(data.spectrum.poles, factors, norming):
        updates = {"norming": complex(constant)}
        if pole.residue_constant is not None:
            updates["residue_constant"] = pole.residue_constant * complex(factor)
        poles.append(pole.model_copy(update=updates))
    spectrum = data.spectrum.model_copy(update={"poles": poles})
    return data.model_copy(update={"table": evolved, "spectrum": spectrum, "time": data.time + t})


def _partner(grid: np.ndarray, targets: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    idx = np.clip(np.searchsorted(grid, targets), 1, grid.size - 1)
    left, right = grid[idx - 1], grid[idx]
    idx = np.where(np.abs(targets - left) <= np.abs(targets - right), idx - 1, idx)
    if np.any(np.abs(grid[idx] - targets) > rtol * np.abs(targets)):
        bad = targets[np.argmax(np.abs(grid[idx] - targets) / np.abs(targets))]
        raise ValueError(f"grid is not closed under the symmetry maps (no partner for {bad:.12g})")
    return idx


def validate_symmetries(table: ReflectionTable, tol: float = 1e-6) -> Result[SymmetryReport, StageError]:
    """Check r(ζ) = conj r(-ζ), r(ζ) = -conj r(1/ζ) and r(ζ) = -r(-1/ζ) on a table.

    The grid must be closed under ζ → -ζ and ζ → 1/ζ. Points whose deviation exceeds ``tol`` are
    reported per relation.
    """
    grid, r = table.grid, table.r
    try:
        neg = _partner(grid, -grid)
        inv = _partner(grid, 1.0 / grid)
        neg_inv = _partner(grid, -1.0 / grid)
    except ValueError as e:
        return validation_failure(Stage.SCATTER, str(e))

    relations = {
        "reflection": np.abs(r - np.conj(r[neg])),
        "inversion": np.abs(r + np.conj(r[inv])),
        "composite": np.abs(r + r[neg_inv]),
    }
    deviations = {name: float(np.max(dev)) for name, dev in relations.items()}
    flagged = {name: grid[dev > tol].tolist() for name, dev in relations.items() if np.any(dev > tol)}
    if flagged:
        logger.warning("Reflection symmetries violated beyond %.3g: %s", tol, deviations)
    return Success(SymmetryReport(tolerance=tol, deviations=deviations, flagged=flagged))


def picard_jost(
    profile: InitialProfile,
    z: float,
    x_cut: float = 1.0,
    max_iter: int = 200,
    tol: float = 1e-12,
) -> Result[Tuple[np.ndarray, np.ndarray], StageError]:
    """μ₊(z; x) on x ≥ x_cut by Picard iteration of the Volterra equation anchored at x_max.

    Off z = ±1 the kernel is E₊e^{iλ(x-y)σ̂₃}E₊⁻¹(q - 1)σ₁; at z = ±1, where E₊ is singular and λ = 0,
    it is (I + (x - y)X₊)(q - 1)σ₁ with X₊ = ±iσ₃ + σ₁. Returns (x, μ₊) with μ₊ of shape (n, 2, 2).
    """
    z = float(z)
    if z == 0:
        return validation_failure(Stage.SCATTER, "z = 0 is excluded")
    mask = profile.x >= x_cut
    x = profile.x[mask]
    if x.size < 8:
        return validation_failure(Stage.SCATTER, f"fewer than 8 grid points beyond x_cut = {x_cut}")
    dq = profile.q[mask] - profile.right_value
    sigma1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    e_plus = np.array([[1.0, 1j / z], [-1j / z, 1.0]], dtype=complex)
    lam, k = 0.5 * (z - 1.0 / z), 0.5 * (z + 1.0 / z)
    special = abs(lam) < 1e-14

    def tail(values: np.ndarray) -> np.ndarray:
        # ∫_x^{x_max} along axis 0
        running = cumulative_simpson(values, x=x, axis=0, initial=0)
        return running[-1] - running

    mu = np.broadcast_to(e_plus, (x.size, 2, 2)).copy()
    if special:
        generator = 1j * k * np.diag([1.0, -1.0]) + sigma1
    else:
        e_inv = np.linalg.inv(e_plus)
        s = np.array([1.0, -1.0])
        rotation = np.exp(1j * lam * np.subtract.outer(s, s)[None, :, :] * x[:, None, None])

    for iteration in range(max_iter):
        source = dq[:, None, None] * np.einsum("ij,njk->nik", sigma1, mu)
        if special:
            first = tail(source)
            moment = tail(x[:, None, None] * source)
            correction = first + np.einsum("ij,njk->nik", generator, x[:, None, None] * first - moment)
            update = e_plus - correction
        else:
            kernel = np.einsum("ij,njk->nik", e_inv, source)
            integral = rotation * tail(kernel / rotation)
            update = e_plus - np.einsum("ij,njk->nik", e_plus, integral)
        change = float(np.max(np.abs(update - mu)))
        mu = update
        if change < tol:
            logger.debug("Picard iteration converged after %d sweeps", iteration + 1)
            return Success((x, mu))
    return numerical_failure(Stage.SCATTER, "Picard iteration did not converge", z=z, change=change)
