"""
Initial-profile and reflection-table factories used by the tests, the CLI and the tool server.

This module provides:
- The exact kink tanh(x) and the perturbed kink tanh(x) + A·exp(-x²)
- A reflectionless table (p = 0)
- A manufactured symmetric table with a prescribed p = |r(1)|
"""

from .profiles import (
    PROFILE_FAMILIES,
    kink_profile,
    manufactured_table,
    perturbed_kink_profile,
    profile_family,
    reflectionless_data,
)

__all__ = [
    "PROFILE_FAMILIES",
    "kink_profile",
    "manufactured_table",
    "perturbed_kink_profile",
    "profile_family",
    "reflectionless_data",
]
