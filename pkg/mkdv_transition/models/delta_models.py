"""
Models for the scalar function δ(z) and the phase data at z = 1.
"""

import math
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from ..core.problem_types import PhiVariant


class CauchyOptions(BaseModel):
    """Quadrature controls for the Cauchy integrals of log(1 - |r|²)."""

    tail_tol: float = Field(default=1e-6, gt=0, description="Tail bound above which a warning is logged")
    clamp_tol: float = Field(default=1e-6, gt=0, description="p ≥ 1 - clamp_tol is clamped to the generic boundary")
    refinements: int = Field(default=2, ge=1, description="Number of table coarsenings used for the PV history")
    pv_tol: float = Field(default=3e-3, gt=0, description="Max change of the PV integral under one 2× coarsening")
    fold: Optional[bool] = Field(
        default=None, description="Use the ζ → -ζ, ζ → 1/ζ symmetric quadrature; None detects it from the table"
    )


class PhaseAtOne(BaseModel):
    """Amplitude p = |r(1)| and phase φ₀ entering the transition formula."""

    p: float = Field(..., description="|r(1)|, in [0, 1]")
    phi0: float = Field(..., description="φ₀ from the principal-value formula, in (-π, π]")
    generic: bool = Field(..., description="|r(1)| = 1 to tolerance")
    phi0_blaschke: float = Field(..., description="φ₀ + 2·arg h(1), reduced to (-π, π]")
    pv_integral: float = Field(default=0.0, description="PV ∫ log(1 - |r|²)/(ζ - 1) dζ")
    tail_bound: float = Field(default=0.0, description="Bound on the neglected table tails")
    clamped: bool = Field(default=False, description="p was clamped to 1")
    refinement_history: List[float] = Field(default_factory=list, description="PV values on coarsened tables")

    @field_validator("p")
    @classmethod
    def _unit_interval(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"p = {value} outside [0, 1]")
        return value

    @field_validator("phi0", "phi0_blaschke")
    @classmethod
    def _principal(cls, value: float) -> float:
        if not -math.pi < value <= math.pi:
            raise ValueError(f"phase {value} outside (-π, π]")
        return value

    def phase(self, variant: PhiVariant = PhiVariant.INTEGRAL) -> float:
        return self.phi0 if variant == PhiVariant.INTEGRAL else self.phi0_blaschke

    def to_payload(self) -> dict:
        return {
            "p": self.p,
            "phi0": self.phi0,
            "generic": self.generic,
            "phi0_blaschke": self.phi0_blaschke,
            "pv_integral": self.pv_integral,
            "tail_bound": self.tail_bound,
            "clamped": self.clamped,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "PhaseAtOne":
        return cls(
            p=float(payload["p"]),
            phi0=float(payload["phi0"]),
            generic=bool(payload["generic"]),
            phi0_blaschke=float(payload.get("phi0_blaschke", payload["phi0"])),
            pv_integral=float(payload.get("pv_integral", 0.0)),
            tail_bound=float(payload.get("tail_bound", 0.0)),
            clamped=bool(payload.get("clamped", False)),
        )
