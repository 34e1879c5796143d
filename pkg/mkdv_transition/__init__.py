"""
mkdv-transition

Numerical toolkit for the defocusing mKdV equation q_t - 6q²q_x + q_xxx = 0 with step-like boundary
values q → ∓1, centred on the transition region near the ray x = -6t where the solution is described
by a Painlevé II profile.

The package provides:
- Spectral-plane geometry: phase function, saddle points, sign tables, region classification
- Direct scattering of sampled initial data: Jost solutions, a, b, r and the discrete spectrum
- The scalar function δ, the amplitude p = |r(1)| and the phase φ₀
- Ablowitz–Segur solutions of Painlevé II
- Leading-order transition-region asymptotics
- A pseudo-spectral reference simulator and the asymptotic-versus-simulation comparison
"""

__version__ = "1.0.0"

from .core.base_models import StageError
from .core.problem_types import ErrorKind, PhiVariant, PIIMethod, RegionClass, SaddleRegime, Stage
from .models import (
    CauchyOptions,
    ComparisonReport,
    DiscreteSpectrum,
    InitialProfile,
    JostOptions,
    PhaseAtOne,
    PIIConfig,
    PIISolution,
    ReflectionTable,
    RootScanOptions,
    ScatteringData,
    SimConfig,
    SimHistory,
)

__all__ = [
    "__version__",
    # Core types
    "ErrorKind",
    "PIIMethod",
    "PhiVariant",
    "RegionClass",
    "SaddleRegime",
    "Stage",
    "StageError",
    # Models
    "CauchyOptions",
    "ComparisonReport",
    "DiscreteSpectrum",
    "InitialProfile",
    "JostOptions",
    "PIIConfig",
    "PIISolution",
    "PhaseAtOne",
    "ReflectionTable",
    "RootScanOptions",
    "ScatteringData",
    "SimConfig",
    "SimHistory",
]
