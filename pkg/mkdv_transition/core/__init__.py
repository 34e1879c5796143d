"""
Core types and base classes for the mKdV transition-region toolkit.
"""

from .base_models import ComplexValue, StageError, TabularModel, numerical_failure, validation_failure
from .problem_types import ErrorKind, PhiVariant, PIIMethod, RegionClass, SaddleRegime, Stage

__all__ = [
    "ComplexValue",
    "ErrorKind",
    "PIIMethod",
    "PhiVariant",
    "RegionClass",
    "SaddleRegime",
    "Stage",
    "StageError",
    "TabularModel",
    "numerical_failure",
    "validation_failure",
]
