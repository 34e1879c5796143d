"""
Transition-region query and result models.
"""

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from ..core.base_models import TabularModel


class TransitionQuery(BaseModel):
    """A space-time point (x, t) near the ray x = -6t."""

    x: float = Field(..., description="Space")
    t: float = Field(..., description="Time")

    @field_validator("t")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError(f"t must be positive, got {value}")
        return value


class AsymptoticResult(BaseModel):
    """Leading-order transition-region value of q(x, t)."""

    x: float = Field(..., description="Space")
    t: float = Field(..., description="Time")
    s: float = Field(..., description="Scaled variable")
    q_leading: float = Field(..., description="-1 + (3t)^(-1/3)·u(s)·cos φ₀")
    amplitude_factor: float = Field(..., description="(3t)^(-1/3)")
    error_scale: float = Field(..., description="t^(-1/3-ε), reported only")
    in_band: bool = Field(default=True, description="|x/t + 6|·t^(2/3) < C")


class FirstOrderMatrices(BaseModel):
    """E₁ and M⁽³⁾(0) of the first-order expansion."""

    model_config = {"arbitrary_types_allowed": True}

    e1: np.ndarray = Field(..., description="2×2 matrix E₁")
    m3_at_0: np.ndarray = Field(..., description="2×2 matrix M⁽³⁾(0)")


class TransitionSweep(TabularModel):
    """q_asym over a (t, s) sweep."""

    results: list[AsymptoticResult] = Field(default_factory=list, description="Rows sorted by (t, s)")

    def columns(self) -> list[str]:
        return ["x", "t", "s", "q_asym"]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "x": [r.x for r in self.results],
                "t": [r.t for r in self.results],
                "s": [r.s for r in self.results],
                "q_asym": [r.q_leading for r in self.results],
            },
            columns=self.columns(),
        )
