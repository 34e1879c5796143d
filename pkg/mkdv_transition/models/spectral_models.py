"""
Spectral-plane models: uniformized points, saddle sets, signature tables and regions.
"""

import math
from typing import List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from ..core.base_models import TabularModel
from ..core.problem_types import RegionClass, SaddleRegime


class SpectralPoint(BaseModel):
    """A point z of the uniformized spectral plane."""

    z: complex = Field(..., description="Spectral variable z = k + λ")

    @field_validator("z")
    @classmethod
    def _nonzero(cls, value: complex) -> complex:
        if value == 0:
            raise ValueError("z = 0 is excluded: the uniformization is singular at the origin")
        return value


class RaySlope(BaseModel):
    """The velocity ξ = x/t of a ray in the (x, t) half-plane."""

    xi: float = Field(..., description="Ray slope x/t")

    @field_validator("xi")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("ξ must be finite")
        return value


class SaddleSet(BaseModel):
    """The four ξ-dependent saddle points plus the fixed saddles ±i."""

    xi: float = Field(..., description="Ray slope the saddles belong to")
    points: List[complex] = Field(..., description="z1..z4 in the documented order")
    fixed: List[complex] = Field(default_factory=lambda: [1j, -1j], description="Fixed saddles ±i")
    regime: SaddleRegime = Field(..., description="Location of z1..z4")
    multiplicity: int = Field(default=1, description="2 when the saddles merge pairwise (ξ = ±6)")
    eta_plus: complex = Field(..., description="η₊, the larger root of 3η² + ξη + 3 = 0")
    eta_minus: complex = Field(..., description="η₋")

    def to_payload(self) -> dict:
        return {
            "xi": self.xi,
            "regime": self.regime.value,
            "multiplicity": self.multiplicity,
            "points": [{"re": p.real, "im": p.imag} for p in self.points],
            "fixed": [{"re": p.real, "im": p.imag} for p in self.fixed],
        }


class PhasePortrait(TabularModel):
    """Sign field of Re(2iθ) on a rectangular grid."""

    xi: float = Field(..., description="Ray slope used")
    u: np.ndarray = Field(..., description="Real parts of the grid (columns)")
    v: np.ndarray = Field(..., description="Imaginary parts of the grid (rows)")
    sign: np.ndarray = Field(..., description="Sign table, shape (len(v), len(u)), values in {-1, 0, 1}")

    def columns(self) -> list[str]:
        return ["u", "v", "sign"]

    def to_frame(self) -> pd.DataFrame:
        uu, vv = np.meshgrid(self.u, self.v)
        return pd.DataFrame(
            {"u": uu.ravel(), "v": vv.ravel(), "sign": self.sign.astype(int).ravel()},
            columns=self.columns(),
        )

    def sign_at(self, u: float, v: float) -> int:
        """Sign stored at the grid node nearest to (u, v)."""
        i = int(np.argmin(np.abs(self.v - v)))
        j = int(np.argmin(np.abs(self.u - u)))
        return int(self.sign[i, j])


class RegionInfo(BaseModel):
    """Region classification of one (x, t) point."""

    region: RegionClass = Field(..., description="Asymptotic region")
    xi: float = Field(..., description="x/t")
    band_c: float = Field(..., description="Transition band half-width C")
    band_value: float = Field(..., description="(x/t + 6)·t^{2/3}")
    one_sided: bool = Field(default=False, description="Whether the one-sided window -C < value < 0 was used")
    note: Optional[str] = Field(default=None, description="Extra remark")
