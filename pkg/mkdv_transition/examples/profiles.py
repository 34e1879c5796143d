"""
Profile and table factories.
"""

from typing import Callable, Dict, Optional

import numpy as np

from ..models.scattering_models import DiscreteSpectrum, InitialProfile, Pole, ReflectionTable, ScatteringData
from ..solvers.scattering import default_zgrid
from ..solvers.spectral_plane import soliton_velocity


def kink_profile(x_min: float = -40.0, x_max: float = 40.0, n: int = 4096) -> InitialProfile:
    """q₀ = tanh(x): reflectionless, one pole at z = i with norming constant 2i."""
    return InitialProfile.from_function(np.tanh, x_min, x_max, n, label="kink")


def perturbed_kink_profile(
    amplitude: float = 0.3, x_min: float = -40.0, x_max: float = 40.0, n: int = 4096
) -> InitialProfile:
    """q₀ = tanh(x) + A·exp(-x²)."""

    def q0(x: np.ndarray) -> np.ndarray:
        return np.tanh(x) + amplitude * np.exp(-x * x)

    return InitialProfile.from_function(q0, x_min, x_max, n, label=f"perturbed_kink(A={amplitude:g})")


PROFILE_FAMILIES: Dict[str, Callable[..., InitialProfile]] = {
    "kink": kink_profile,
    "perturbed_kink": perturbed_kink_profile,
}


def profile_family(name: str, amplitude: float = 0.3, **grid: float) -> InitialProfile:
    """Build a named analytic profile; ``amplitude`` only applies to the perturbed kink."""
    if name not in PROFILE_FAMILIES:
        raise ValueError(f"unknown profile family '{name}', expected one of {sorted(PROFILE_FAMILIES)}")
    if name == "perturbed_kink":
        return perturbed_kink_profile(amplitude, **grid)
    return kink_profile(**grid)


def manufactured_table(p: float, grid: Optional[np.ndarray] = None) -> ReflectionTable:
    """Symmetric table r(ζ) = i·p·2ζ/(1 + ζ²), so r(1) = ip and |r| ≤ p everywhere.

    It satisfies r(-ζ) = conj r(ζ) and r(ζ) = -conj r(1/ζ), hence the principal value at ζ = 1
    vanishes and φ₀ = -π/2 for every p > 0.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    grid = default_zgrid() if grid is None else np.asarray(grid, dtype=float)
    r = 1j * p * 2.0 * grid / (1.0 + grid * grid)
    return ReflectionTable.from_values(
        grid,
        r,
        r_at_one=1j * p,
        r_at_minus_one=-1j * p,
        generic=p >= 1.0,
        margin=float(np.min(np.abs(np.abs(grid) - 1.0))),
    )


def reflectionless_data(grid: Optional[np.ndarray] = None, with_kink_pole: bool = True) -> ScatteringData:
    """Scattering data of the pure kink: r ≡ 0 and, optionally, the pole at i with c = 2i."""
    grid = default_zgrid() if grid is None else np.asarray(grid, dtype=float)
    poles = []
    if with_kink_pole:
        poles.append(Pole(eta=1j, norming=2j, self_conjugate=True, velocity=soliton_velocity(1j)))
    return ScatteringData(
        table=ReflectionTable.reflectionless(grid),
        spectrum=DiscreteSpectrum(poles=poles),
        mass=-2.0 if with_kink_pole else 0.0,
    )
