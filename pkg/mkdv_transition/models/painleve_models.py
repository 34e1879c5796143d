"""
Painlevé II and Airy models.
"""

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, model_validator

from ..core.base_models import TabularModel
from ..core.problem_types import PIIMethod


class PIIConfig(BaseModel):
    """Ablowitz–Segur initial value problem u(s) ~ -p·Ai(s) as s → +∞."""

    p: float = Field(..., ge=0.0, le=1.0, description="Amplitude p = |r(1)|")
    s_start: float = Field(default=9.0, ge=6.0, description="Anchor where u = -p·Ai, u′ = -p·Ai′")
    s_min: float = Field(default=-10.0, description="Left end of the solution grid")
    ds: float = Field(default=0.005, gt=0, description="Spacing of the returned grid")
    rtol: float = Field(default=1e-12, gt=0, description="Relative tolerance of the adaptive pair")
    atol: float = Field(default=1e-24, gt=0, description="Absolute tolerance of the adaptive pair")
    method: PIIMethod = Field(default=PIIMethod.DOP853, description="Integrator")
    rk4_step: float = Field(default=1e-3, gt=0, description="Step of the fixed-step RK4 path")
    blowup: float = Field(default=1e3, gt=0, description="|u| beyond which a pole is declared")

    @model_validator(mode="after")
    def _ordered(self) -> "PIIConfig":
        if self.s_min >= self.s_start:
            raise ValueError(f"s_min = {self.s_min} must be below s_start = {self.s_start}")
        return self


class AiryValue(BaseModel):
    """Ai(s) and Ai′(s)."""

    s: float = Field(..., description="Argument")
    ai: float = Field(..., description="Ai(s)")
    aip: float = Field(..., description="Ai′(s)")


class PIISolution(TabularModel):
    """Sampled Ablowitz–Segur solution with its tail integral I(s) = ∫ₛ^∞ u²."""

    p: float = Field(..., description="Amplitude")
    s: np.ndarray = Field(..., description="Descending s grid")
    u: np.ndarray = Field(..., description="u(s)")
    uprime: np.ndarray = Field(..., description="u′(s)")
    tail: np.ndarray = Field(..., description="I(s)")
    s_start: float = Field(..., description="Anchor used")
    method: PIIMethod = Field(..., description="Integrator used")
    residual_sup: float = Field(default=0.0, description="Sup of the integrated ODE residual on the grid")
    boundary_case: bool = Field(default=False, description="p = 1 (Hastings–McLeod type)")

    def columns(self) -> list[str]:
        return ["s", "u", "uprime", "I"]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"s": self.s, "u": self.u, "uprime": self.uprime, "I": self.tail}, columns=self.columns()
        )

    @property
    def s_range(self) -> tuple[float, float]:
        return float(self.s.min()), float(self.s.max())

    def contains(self, s: float) -> bool:
        lo, hi = self.s_range
        return lo - 1e-12 <= s <= hi + 1e-12
