"""
Models for the pseudo-spectral mKdV simulator.
"""

import math
from typing import List

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from ..core.base_models import TabularModel


class SimConfig(BaseModel):
    """Grid, time step and absorbing-layer settings of the simulator."""

    half_width: float = Field(default=200.0, gt=0, description="Domain half-width L, periodic on [-L, L)")
    n_points: int = Field(default=8192, description="Grid size N, a power of two ≥ 256")
    dt: float = Field(default=2.5e-3, gt=0, description="Time step")
    final_time: float = Field(default=1.0, ge=0, description="Final time T")
    dealias: float = Field(default=2.0 / 3.0, gt=0, le=1.0, description="Retained fraction of the spectrum")
    background_subtraction: bool = Field(
        default=True, description="Subtract the moving kink tanh(x + 2t); otherwise the static tanh(x)"
    )
    frame_velocity: float = Field(default=0.0, description="Co-moving frame y = x - c·t")
    sponge_width: float = Field(default=30.0, ge=0, description="Width of the absorbing layer at each edge")
    sponge_strength: float = Field(default=4.0, ge=0, description="Peak damping rate of the absorbing layer")
    edge_tol: float = Field(default=1e-3, gt=0, description="Max |v| tolerated in the outer edge band")
    edge_fraction: float = Field(default=0.01, gt=0, lt=0.5, description="Edge band as a fraction of 2L")
    sanity_bound: float = Field(default=1.5, gt=1.0, description="|q| above this is a blow-up")
    contour_points: int = Field(default=32, ge=8, description="Contour nodes of the φ-function evaluation")
    cfl_safety: float = Field(default=2.5, gt=0, description="Stability constant of the explicit nonlinear part")
    check_every: int = Field(default=50, ge=1, description="Steps between contamination/sanity checks")

    @field_validator("n_points")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value < 256 or value & (value - 1):
            raise ValueError(f"n_points must be a power of two ≥ 256, got {value}")
        return value

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @property
    def kappa_max(self) -> float:
        """Largest retained wavenumber after dealiasing."""
        return self.dealias * math.pi / self.dx

    def stiff_dt_bound(self) -> float:
        """Step an explicit scheme would need for the dispersive term, c·(L/N)³."""
        return self.cfl_safety * (self.dx / math.pi) ** 3

    def nonlinear_dt_bound(self, vmax: float) -> float:
        """Step bound of the explicitly treated nonlinear and damping terms."""
        speed = 6.0 + 12.0 * vmax + 6.0 * vmax**2
        return self.cfl_safety / (self.kappa_max * speed + self.sponge_strength)


class SimState(TabularModel):
    """Perturbation v on the frame grid, q = reference + v."""

    t: float = Field(..., description="Time")
    y: np.ndarray = Field(..., description="Frame coordinate grid y = x - c·t")
    v: np.ndarray = Field(..., description="Perturbation samples")
    frame_velocity: float = Field(default=0.0, description="c")
    reference_speed: float = Field(default=2.0, description="β in tanh(y + β·t)")

    @property
    def x(self) -> np.ndarray:
        return self.y + self.frame_velocity * self.t

    def reference(self) -> np.ndarray:
        return np.tanh(self.y + self.reference_speed * self.t)

    def q(self) -> np.ndarray:
        return self.reference() + self.v

    def columns(self) -> list[str]:
        return ["x", "q"]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.x, "q": self.q()}, columns=self.columns())


class SimHistory(BaseModel):
    """Snapshots at the requested times plus the conservation ledger."""

    config: SimConfig = Field(..., description="Configuration used")
    snapshots: List[SimState] = Field(default_factory=list, description="States at the requested times")
    mass_ledger: List[tuple[float, float]] = Field(default_factory=list, description="(t, mass) pairs")
    steps: int = Field(default=0, description="Time steps taken")

    @property
    def mass_drift(self) -> float:
        if not self.mass_ledger:
            return 0.0
        masses = np.array([m for _, m in self.mass_ledger])
        return float(np.max(np.abs(masses - masses[0])))

    def at(self, t: float) -> SimState:
        return min(self.snapshots, key=lambda state: abs(state.t - t))
