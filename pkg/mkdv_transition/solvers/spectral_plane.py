"""
Uniformization, the phase function θ, its signature table, saddle points and region classification.
"""

import math
from typing import Sequence, Tuple, Union

import numpy as np
from returns.result import Result, Success

from ..core.base_models import StageError, validation_failure
from ..core.problem_types import RegionClass, SaddleRegime, Stage
from ..models.spectral_models import PhasePortrait, RaySlope, RegionInfo, SaddleSet, SpectralPoint

ComplexLike = Union[complex, float, np.ndarray, SpectralPoint]
SlopeLike = Union[float, RaySlope]

MERGE_TOL = 1e-12


def _as_z(z: ComplexLike) -> Union[complex, np.ndarray]:
    if isinstance(z, SpectralPoint):
        return z.z
    if np.ndim(z) == 0:
        value = complex(z)
        if value == 0:
            raise ValueError("z = 0 is excluded: the uniformization is singular at the origin")
        return value
    arr = np.asarray(z, dtype=complex)
    if np.any(arr == 0):
        raise ValueError("z = 0 is excluded: the uniformization is singular at the origin")
    return arr


def _as_xi(xi: SlopeLike) -> float:
    return xi.xi if isinstance(xi, RaySlope) else RaySlope(xi=float(xi)).xi


def uniformize(z: ComplexLike) -> Tuple[complex, complex]:
    """Return (λ, k) with λ = (z - 1/z)/2 and k = (z + 1/z)/2."""
    z = _as_z(z)
    inv = 1.0 / z
    return 0.5 * (z - inv), 0.5 * (z + inv)


def theta(z: ComplexLike, xi: SlopeLike) -> complex:
    """θ(z) = λ(z)(ξ + 4k(z)² + 2)."""
    lam, k = uniformize(z)
    return lam * (_as_xi(xi) + 4.0 * k**2 + 2.0)


def theta_prime(z: ComplexLike, xi: SlopeLike) -> complex:
    """θ′(z) = (1 + z²)(3z⁴ + ξz² + 3) / (2z⁴)."""
    z = _as_z(z)
    xi = _as_xi(xi)
    z2 = z * z
    return (1.0 + z2) * (3.0 * z2 * z2 + xi * z2 + 3.0) / (2.0 * z2 * z2)


def re_2i_theta(u: Union[float, np.ndarray], v: Union[float, np.ndarray], xi: SlopeLike) -> Union[float, np.ndarray]:
    """Closed form of Re(2iθ(u + iv))."""
    xi = _as_xi(xi)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    rho = u * u + v * v
    if np.any(rho == 0):
        raise ValueError("Re(2iθ) is undefined at the origin")
    value = -v * ((3.0 * u * u - v * v) * (1.0 + rho**-3) + (xi + 3.0) * (1.0 + 1.0 / rho))
    return float(value) if value.ndim == 0 else value


def re_2i_theta_polar(radius: float, angle: float, xi: SlopeLike) -> float:
    """Re(2iθ) at z = radius·e^{i·angle}, written through F(l) = l + 1/l."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    xi = _as_xi(xi)
    f = radius + 1.0 / radius
    c2 = math.cos(2.0 * angle)
    return -f * math.sin(angle) * ((1.0 + 2.0 * c2) * f * f - 6.0 * c2 + xi)


def critical_line_radii(angle: float, xi: SlopeLike) -> Tuple[float, float] | None:
    """Radii l₁ ≤ l₂ (l₁l₂ = 1) where Re(2iθ) changes sign along the ray of the given angle."""
    xi = _as_xi(xi)
    denom = 2.0 * math.cos(2.0 * angle) + 1.0
    if abs(denom) < 1e-15:
        return None
    alpha = 3.0 - (3.0 + xi) / denom
    if alpha < 4.0:
        return None
    root = math.sqrt(alpha)
    gap = math.sqrt(alpha - 4.0)
    return 0.5 * (root - gap), 0.5 * (root + gap)


def critical_circle_points(xi: SlopeLike) -> list[complex]:
    """Crossings of the critical line with |z| = 1, i.e. 2cos(2φ) + ξ + 4 = 0."""
    xi = _as_xi(xi)
    c = -(xi + 4.0) / 2.0
    if abs(c) > 1.0:
        return []
    half = 0.5 * math.acos(max(-1.0, min(1.0, c)))
    points: list[complex] = []
    for phi in (half, math.pi - half, -half, math.pi + half):
        z = complex(math.cos(phi), math.sin(phi))
        if all(abs(z - w) > 1e-12 for w in points):
            points.append(z)
    return sorted(points, key=lambda w: (round(math.atan2(w.imag, w.real), 12)))


def soliton_velocity(eta: complex) -> float:
    """Ray velocity ξ = -4 - 2cos(2 arg η) whose critical line passes through η on the unit circle."""
    return -4.0 - 2.0 * math.cos(2.0 * math.atan2(eta.imag, eta.real))


def saddle_points(xi: SlopeLike) -> SaddleSet:
    """The four ξ-dependent roots of θ′ from the closed forms for η± = z²."""
    xi = _as_xi(xi)
    if abs(xi + 6.0) <= MERGE_TOL:
        return SaddleSet(
            xi=xi, points=[1 + 0j, 1 + 0j, -1 + 0j, -1 + 0j], regime=SaddleRegime.MERGED_REAL,
            multiplicity=2, eta_plus=1 + 0j, eta_minus=1 + 0j,
        )
    if abs(xi - 6.0) <= MERGE_TOL:
        return SaddleSet(
            xi=xi, points=[1j, 1j, -1j, -1j], regime=SaddleRegime.MERGED_IMAGINARY,
            multiplicity=2, eta_plus=-1 + 0j, eta_minus=-1 + 0j,
        )

    if abs(xi) > 6.0:
        disc = math.sqrt(xi * xi - 36.0)
        eta_plus = (-xi + disc) / 6.0
        eta_minus = (-xi - disc) / 6.0
        if xi < -6.0:
            sp, sm = math.sqrt(eta_plus), math.sqrt(eta_minus)
            points = [complex(sp), complex(sm), complex(-sm), complex(-sp)]
            regime = SaddleRegime.REAL_AXIS
        else:
            sm, sp = math.sqrt(-eta_minus), math.sqrt(-eta_plus)
            points = [1j * sm, 1j * sp, -1j * sp, -1j * sm]
            regime = SaddleRegime.IMAGINARY_AXIS
        return SaddleSet(
            xi=xi, points=points, regime=regime, eta_plus=complex(eta_plus), eta_minus=complex(eta_minus)
        )

    disc = math.sqrt(36.0 - xi * xi)
    eta_plus = complex(-xi, disc) / 6.0
    eta_minus = complex(-xi, -disc) / 6.0
    w_plus = np.exp(0.5j * np.angle(eta_plus))
    w_minus = np.exp(0.5j * np.angle(eta_minus))
    return SaddleSet(
        xi=xi,
        points=[complex(w_plus), complex(-w_plus), complex(w_minus), complex(-w_minus)],
        regime=SaddleRegime.UNIT_CIRCLE,
        eta_plus=eta_plus,
        eta_minus=eta_minus,
    )


def classify_region(x: float, t: float, band_c: float, one_sided: bool = False) -> RegionInfo:
    """Asymptotic region of (x, t) for a transition band of half-width C."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if band_c <= 0:
        raise ValueError(f"band half-width C must be positive, got {band_c}")
    xi = x / t
    value = (xi + 6.0) * t ** (2.0 / 3.0)
    in_band = (-band_c < value < 0.0 or value == 0.0) if one_sided else abs(value) < band_c
    if in_band:
        region = RegionClass.TRANSITION
    elif -6.0 < xi <= -2.0:
        region = RegionClass.SOLITONIC
    elif xi < -6.0:
        region = RegionClass.SOLITONLESS_LEFT
    else:
        region = RegionClass.SOLITONLESS_RIGHT
    return RegionInfo(region=region, xi=xi, band_c=band_c, band_value=value, one_sided=one_sided)


def signature_at(u: Union[float, np.ndarray], v: Union[float, np.ndarray], xi: SlopeLike) -> np.ndarray:
    """Sign of Re(2iθ) with values below 1e-14·(1 + |ξ|) stored as 0."""
    xi = _as_xi(xi)
    values = np.asarray(re_2i_theta(u, v, xi))
    signs = np.sign(values).astype(np.int8)
    signs[np.abs(values) < 1e-14 * (1.0 + abs(xi))] = 0
    return signs


def signature_grid(
    xi: SlopeLike, bounds: Sequence[float], resolution: Sequence[int]
) -> Result[PhasePortrait, StageError]:
    """Sign field of Re(2iθ) on [u_min, u_max] × [v_min, v_max]."""
    try:
        xi = _as_xi(xi)
        u_min, u_max, v_min, v_max = (float(b) for b in bounds)
        n_u, n_v = (int(n) for n in resolution)
    except (TypeError, ValueError) as e:
        return validation_failure(Stage.SIGNATURE, f"Invalid signature grid specification: {e}")

    if n_u < 2 or n_v < 2:
        return validation_failure(Stage.SIGNATURE, "resolution must be at least 2 per axis", resolution=[n_u, n_v])
    if not (u_min < u_max and v_min < v_max):
        return validation_failure(Stage.SIGNATURE, "bounds must satisfy u_min < u_max and v_min < v_max")

    u = np.linspace(u_min, u_max, n_u)
    v = np.linspace(v_min, v_max, n_v)
    uu, vv = np.meshgrid(u, v)
    if np.any((uu == 0.0) & (vv == 0.0)):
        return validation_failure(Stage.SIGNATURE, "signature grid contains the origin", bounds=list(bounds))

    return Success(PhasePortrait(xi=xi, u=u, v=v, sign=signature_at(uu, vv, xi)))
