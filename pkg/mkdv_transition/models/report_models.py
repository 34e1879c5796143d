"""
Run manifests and the asymptotic-versus-simulation comparison report.
"""

from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

from ..core.base_models import TabularModel
from ..core.problem_types import PhiVariant


class RunManifest(BaseModel):
    """Provenance record written next to every command output."""

    command: str = Field(..., description="Subcommand name")
    inputs: Dict[str, str] = Field(default_factory=dict, description="Input paths by role")
    config_hash: str = Field(..., description="SHA-256 of the resolved configuration")
    tool_version: str = Field(..., description="Package version")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="Tolerances in force")
    outputs: List[str] = Field(default_factory=list, description="Every file produced")
    summary: Dict[str, Any] = Field(default_factory=dict, description="Command-specific diagnostics")
    warnings: List[str] = Field(default_factory=list, description="Warnings raised during the run")


class ComparisonRow(BaseModel):
    """One (t, s) comparison point."""

    x: float
    t: float
    s: float
    q_asym: float
    q_sim: float

    @property
    def abs_err(self) -> float:
        return abs(self.q_asym - self.q_sim)


class VariantSummary(BaseModel):
    """Error summary of one φ₀ variant."""

    variant: PhiVariant = Field(..., description="φ₀ formula")
    phi0: float = Field(..., description="Phase used")
    sup_err: Dict[float, float] = Field(default_factory=dict, description="sup |q_asym - q_sim| per t")
    slope: Optional[float] = Field(default=None, description="Least-squares slope of log sup_err vs log t")
    leading_error: Optional[float] = Field(
        default=None, description="Relative error of (q_sim + 1)(3t)^(1/3) against u(0)cos φ₀ at the largest t"
    )


class ComparisonReport(TabularModel):
    """Pointwise errors across the sweep and their decay summary."""

    rows: List[ComparisonRow] = Field(default_factory=list, description="Rows sorted by (t, s)")
    primary: VariantSummary = Field(..., description="Summary of the configured φ₀ variant")
    alternate: Optional[VariantSummary] = Field(default=None, description="Summary of the other variant")
    best_variant: PhiVariant = Field(..., description="Variant with the smaller error at the largest t")
    phase: Dict[str, Any] = Field(default_factory=dict, description="PhaseAtOne payload")
    warnings: List[str] = Field(default_factory=list, description="Sweep warnings")

    def columns(self) -> list[str]:
        return ["x", "t", "s", "q_asym", "q_sim", "abs_err"]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "x": [r.x for r in self.rows],
                "t": [r.t for r in self.rows],
                "s": [r.s for r in self.rows],
                "q_asym": [r.q_asym for r in self.rows],
                "q_sim": [r.q_sim for r in self.rows],
                "abs_err": [r.abs_err for r in self.rows],
            },
            columns=self.columns(),
        )

    def to_payload(self) -> dict:
        def summary(v: VariantSummary) -> dict:
            return {
                "variant": v.variant.value,
                "phi0": v.phi0,
                "sup_err": {f"{t:.12g}": e for t, e in v.sup_err.items()},
                "slope": v.slope,
                "leading_error": v.leading_error,
            }

        return {
            "phase": self.phase,
            "summary": summary(self.primary),
            "alternate": None if self.alternate is None else summary(self.alternate),
            "best_variant": self.best_variant.value,
            "warnings": self.warnings,
            "rows": len(self.rows),
        }


class CompareOptions(BaseModel):
    """Sweep of the end-to-end comparison."""

    tlist: List[float] = Field(default_factory=lambda: [5.0, 10.0, 20.0, 40.0], description="Times")
    swindow: tuple[float, float] = Field(default=(-2.0, 2.0), description="s range")
    s_points: int = Field(default=11, ge=1, description="Points in the s window")
    band_c: float = Field(default=3.0, gt=0, description="Transition band half-width C")
    variant: PhiVariant = Field(default=PhiVariant.INTEGRAL, description="Primary φ₀ variant")
