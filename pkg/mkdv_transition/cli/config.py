"""
Pipeline configuration: defaults < key = value file < command-line flags.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator
from returns.result import Result, Success

from ..core.base_models import StageError, validation_failure
from ..core.problem_types import PhiVariant, PIIMethod, Stage
from ..models.delta_models import CauchyOptions
from ..models.painleve_models import PIIConfig
from ..models.report_models import CompareOptions
from ..models.scattering_models import JostOptions, RootScanOptions, ZGridOptions
from ..models.simulation_models import SimConfig

_LIST_KEYS = ("tlist", "swindow", "bounds", "resolution")


class PipelineConfig(BaseModel):
    """Every tunable of the command-line pipeline; keys double as flag names."""

    model_config = {"populate_by_name": True, "extra": "forbid"}

    # Profile and Jost solutions
    truncation_tol: float = Field(default=1e-8, gt=0, description="Allowed |q∓1| at the profile ends")
    match_point: float = Field(default=0.0, description="Interior matching point x₀")
    substeps: int = Field(default=2, ge=1, description="Magnus sub-steps per grid cell")
    edge_margin: float = Field(default=1e-6, gt=0, description="Minimum distance of z to {0, ±1}")

    # Default z grid
    zgrid_margin: float = Field(default=1e-4, gt=0, description="Log-distance of the grid to ±1")
    zgrid_ratio: float = Field(default=1.02, gt=1, description="Geometric grading ratio near ±1")
    zgrid_switch: float = Field(default=0.5, gt=0, description="|log ζ| beyond which spacing is uniform")
    zgrid_step: float = Field(default=0.02, gt=0, description="Uniform spacing in log ζ")
    zmax: float = Field(default=40.0, gt=1, description="Largest |ζ|")

    # Zeros of a and r(±1)
    root_samples: int = Field(default=2000, ge=16, description="Arc samples of the zero scan")
    zero_tol: float = Field(default=1e-6, gt=0, description="Max |a(η)| accepted as a zero")
    richardson_h: float = Field(default=0.02, gt=0, description="Largest offset of r(1 ± h)")
    richardson_levels: int = Field(default=5, ge=2, description="Halvings of h")
    richardson_tol: float = Field(default=1e-6, gt=0, description="Convergence tolerance of r(1)")
    generic_tol: float = Field(default=1e-3, gt=0, description="|r(1)| > 1 - tol marks generic data")

    # Cauchy integrals
    tail_tol: float = Field(default=1e-6, gt=0, description="Tail bound above which a warning is raised")
    clamp_tol: float = Field(default=1e-6, gt=0, description="p ≥ 1 - tol is clamped to 1")
    pv_refinements: int = Field(default=2, ge=1, description="Coarsenings in the PV history")
    pv_tol: float = Field(default=3e-3, gt=0, description="Max change of the PV integral under one 2× coarsening")

    # Painlevé II
    p: Optional[float] = Field(default=None, ge=0.0, le=1.0, description="Amplitude for the painleve command")
    pii_s_start: float = Field(default=9.0, ge=6.0, description="Airy anchor")
    pii_s_min: float = Field(default=-10.0, description="Left end of the PII grid")
    pii_ds: float = Field(default=0.005, gt=0, description="PII output spacing")
    pii_rtol: float = Field(default=1e-12, gt=0, description="PII relative tolerance")
    pii_atol: float = Field(default=1e-24, gt=0, description="PII absolute tolerance")
    pii_method: PIIMethod = Field(default=PIIMethod.DOP853, description="PII integrator")

    # Simulator
    half_width: float = Field(default=200.0, gt=0, description="Domain half-width L")
    n_points: int = Field(default=8192, description="Grid size N")
    dt: float = Field(default=2.5e-3, gt=0, description="Time step")
    final_time: float = Field(default=1.0, ge=0, description="Final time of the simulate command")
    dealias: float = Field(default=2.0 / 3.0, gt=0, le=1.0, description="Retained spectral fraction")
    background_subtraction: bool = Field(default=True, description="Subtract the moving kink")
    frame_velocity: Optional[float] = Field(
        default=None, description="Frame velocity c; simulate defaults to 0, compare to -6"
    )
    sponge_width: float = Field(default=30.0, ge=0, description="Absorbing-layer width")
    sponge_strength: float = Field(default=4.0, ge=0, description="Absorbing-layer strength")
    edge_tol: float = Field(default=1e-3, gt=0, description="Contamination tolerance at the edges")

    # Transition sweep and comparison
    tlist: List[float] = Field(default_factory=lambda: [5.0, 10.0, 20.0, 40.0], description="Times")
    swindow: List[float] = Field(default_factory=lambda: [-2.0, 2.0], description="s window lo,hi")
    s_points: int = Field(default=11, ge=1, description="Points across the s window")
    band_c: float = Field(default=3.0, gt=0, alias="bandC", description="Transition band half-width C")
    band_one_sided: bool = Field(default=False, description="Use -C < (ξ + 6)t^(2/3) < 0")
    phi_variant: PhiVariant = Field(default=PhiVariant.INTEGRAL, description="Primary φ₀ variant")

    # Signature table
    xi: float = Field(default=-6.0, description="Ray slope of the signature table")
    bounds: List[float] = Field(default_factory=lambda: [-3.0, 3.0, -3.0, 3.0], description="u_min,u_max,v_min,v_max")
    resolution: List[int] = Field(default_factory=lambda: [120, 120], description="Columns,rows")

    # Output
    log_level: str = Field(default="INFO", description="Logging level")

    @field_validator(*_LIST_KEYS, mode="before")
    @classmethod
    def _split(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @field_validator("swindow")
    @classmethod
    def _window(cls, value: List[float]) -> List[float]:
        if len(value) != 2 or value[0] > value[1]:
            raise ValueError(f"swindow must be lo,hi with lo ≤ hi, got {value}")
        return value

    @field_validator("bounds")
    @classmethod
    def _bounds(cls, value: List[float]) -> List[float]:
        if len(value) != 4:
            raise ValueError(f"bounds must be u_min,u_max,v_min,v_max, got {value}")
        return value

    @field_validator("resolution")
    @classmethod
    def _resolution(cls, value: List[int]) -> List[int]:
        if len(value) != 2:
            raise ValueError(f"resolution must be columns,rows, got {value}")
        return value

    @classmethod
    def keys(cls) -> List[str]:
        """Config keys as written in files and flags."""
        return [info.alias or name for name, info in cls.model_fields.items()]

    def canonical(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON of the resolved configuration."""
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def jost_options(self) -> JostOptions:
        return JostOptions(
            match_point=self.match_point,
            truncation_tol=self.truncation_tol,
            substeps=self.substeps,
            edge_margin=self.edge_margin,
        )

    def zgrid_options(self) -> ZGridOptions:
        return ZGridOptions(
            margin=self.zgrid_margin,
            ratio=self.zgrid_ratio,
            switch=self.zgrid_switch,
            step=self.zgrid_step,
            zmax=self.zmax,
        )

    def scan_options(self) -> RootScanOptions:
        return RootScanOptions(
            samples=self.root_samples,
            zero_tol=self.zero_tol,
            richardson_h=self.richardson_h,
            richardson_levels=self.richardson_levels,
            richardson_tol=self.richardson_tol,
            generic_tol=self.generic_tol,
        )

    def cauchy_options(self) -> CauchyOptions:
        return CauchyOptions(
            tail_tol=self.tail_tol, clamp_tol=self.clamp_tol, refinements=self.pv_refinements, pv_tol=self.pv_tol
        )

    def pii_config(self, p: float) -> PIIConfig:
        return PIIConfig(
            p=p,
            s_start=self.pii_s_start,
            s_min=self.pii_s_min,
            ds=self.pii_ds,
            rtol=self.pii_rtol,
            atol=self.pii_atol,
            method=self.pii_method,
        )

    def sim_config(self, default_frame_velocity: float = 0.0) -> SimConfig:
        return SimConfig(
            half_width=self.half_width,
            n_points=self.n_points,
            dt=self.dt,
            final_time=self.final_time,
            dealias=self.dealias,
            background_subtraction=self.background_subtraction,
            frame_velocity=default_frame_velocity if self.frame_velocity is None else self.frame_velocity,
            sponge_width=self.sponge_width,
            sponge_strength=self.sponge_strength,
            edge_tol=self.edge_tol,
        )

    def compare_options(self) -> CompareOptions:
        return CompareOptions(
            tlist=self.tlist,
            swindow=(self.swindow[0], self.swindow[1]),
            s_points=self.s_points,
            band_c=self.band_c,
            variant=self.phi_variant,
        )

    def tolerances(self) -> Dict[str, float]:
        return {
            "truncation_tol": self.truncation_tol,
            "edge_margin": self.edge_margin,
            "zero_tol": self.zero_tol,
            "richardson_tol": self.richardson_tol,
            "generic_tol": self.generic_tol,
            "tail_tol": self.tail_tol,
            "clamp_tol": self.clamp_tol,
            "pv_tol": self.pv_tol,
            "pii_rtol": self.pii_rtol,
            "pii_atol": self.pii_atol,
            "edge_tol": self.edge_tol,
        }


def parse_config_text(text: str, source: str = "<config>") -> Result[Dict[str, str], StageError]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    known = set(PipelineConfig.keys())
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            return validation_failure(Stage.CONFIG, f"{source}:{lineno}: expected 'key = value'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            return validation_failure(Stage.CONFIG, f"{source}:{lineno}: unknown key '{key}'", line=lineno, key=key)
        values[key] = value
    return Success(values)


def resolve_config(
    path: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None
) -> Result[PipelineConfig, StageError]:
    """Defaults, then the config file, then flag overrides (``None`` values are ignored)."""
    values: Dict[str, Any] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            return validation_failure(Stage.CONFIG, f"cannot read config file {path}: {e}")
        parsed = parse_config_text(text, str(path))
        if not isinstance(parsed, Success):
            return parsed
        values.update(parsed.unwrap())
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return Success(PipelineConfig.model_validate(values))
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        return validation_failure(Stage.CONFIG, f"invalid configuration: {problems}")
