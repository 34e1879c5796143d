"""
Domain models for the spectral plane, scattering data, Painlevé II, transition asymptotics and simulation.
"""

from .delta_models import CauchyOptions, PhaseAtOne
from .painleve_models import AiryValue, PIIConfig, PIISolution
from .report_models import ComparisonReport, ComparisonRow, CompareOptions, RunManifest, VariantSummary
from .scattering_models import (
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
from .simulation_models import SimConfig, SimHistory, SimState
from .spectral_models import PhasePortrait, RaySlope, RegionInfo, SaddleSet, SpectralPoint
from .transition_models import AsymptoticResult, FirstOrderMatrices, TransitionQuery, TransitionSweep

__all__ = [
    # Spectral plane
    "PhasePortrait",
    "RaySlope",
    "RegionInfo",
    "SaddleSet",
    "SpectralPoint",
    # Scattering
    "DiscreteSpectrum",
    "InitialProfile",
    "JostOptions",
    "JostPair",
    "Pole",
    "ReflectionLimit",
    "ReflectionTable",
    "RootScanOptions",
    "ScatteringData",
    "ScatteringSample",
    "SymmetryReport",
    "ZGridOptions",
    # δ and phase
    "CauchyOptions",
    "PhaseAtOne",
    # Painlevé II
    "AiryValue",
    "PIIConfig",
    "PIISolution",
    # Transition region
    "AsymptoticResult",
    "FirstOrderMatrices",
    "TransitionQuery",
    "TransitionSweep",
    # Simulation
    "SimConfig",
    "SimHistory",
    "SimState",
    # Reports
    "CompareOptions",
    "ComparisonReport",
    "ComparisonRow",
    "RunManifest",
    "VariantSummary",
]
