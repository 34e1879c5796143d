"""
Enumerations shared across the mKdV transition-region toolkit.
"""

from enum import Enum


class RegionClass(str, Enum):
    """Asymptotic regions of the (x, t) half-plane."""

    SOLITONLESS_LEFT = "solitonless_left"
    TRANSITION = "transition"
    SOLITONIC = "solitonic"
    SOLITONLESS_RIGHT = "solitonless_right"


class SaddleRegime(str, Enum):
    """Where the four ξ-dependent saddle points sit."""

    REAL_AXIS = "real_axis"
    UNIT_CIRCLE = "unit_circle"
    IMAGINARY_AXIS = "imaginary_axis"
    MERGED_REAL = "merged_real"  # ξ = -6, saddles collapse to ±1
    MERGED_IMAGINARY = "merged_imaginary"  # ξ = 6, saddles collapse to ±i


class PhiVariant(str, Enum):
    """Which formula is used for the phase φ₀ at z = 1."""

    INTEGRAL = "integral"
    BLASCHKE = "blaschke"


class PIIMethod(str, Enum):
    """Integrators available for the Painlevé II initial value problem."""

    DOP853 = "DOP853"
    RK4 = "RK4"


class ErrorKind(str, Enum):
    """Failure categories; they decide the CLI exit code."""

    VALIDATION = "validation"
    NUMERICAL = "numerical"


class Stage(str, Enum):
    """Pipeline stages named in error reports."""

    CONFIG = "config"
    IO = "io"
    SCATTER = "scatter"
    PHASE = "phase"
    PAINLEVE = "painleve"
    ASYMPTOTE = "asymptote"
    SIMULATE = "simulate"
    COMPARE = "compare"
    SIGNATURE = "signature"
