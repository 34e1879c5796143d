"""
Scattering-transform models: initial profiles, Jost solutions, reflection tables and discrete spectra.
"""

from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator
from scipy.integrate import trapezoid

from ..core.base_models import TabularModel


class InitialProfile(TabularModel):
    """Initial datum q₀ sampled on a uniform, strictly increasing grid."""

    x: np.ndarray = Field(..., description="Uniform spatial grid")
    q: np.ndarray = Field(..., description="Real samples of q₀")
    left_value: float = Field(default=-1.0, description="Boundary value as x → -∞")
    right_value: float = Field(default=1.0, description="Boundary value as x → +∞")
    label: str = Field(default="", description="Free-form provenance label")

    @field_validator("x", "q", mode="before")
    @classmethod
    def _as_array(cls, value: object) -> np.ndarray:
        return np.asarray(value, dtype=float)

    @model_validator(mode="after")
    def _check_grid(self) -> "InitialProfile":
        if self.x.ndim != 1 or self.q.shape != self.x.shape:
            raise ValueError("x and q must be one-dimensional arrays of equal length")
        if self.x.size < 16:
            raise ValueError(f"profile needs at least 16 samples, got {self.x.size}")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.q))):
            raise ValueError("profile contains non-finite values")
        steps = np.diff(self.x)
        if np.any(steps <= 0):
            bad = int(np.argmax(steps <= 0))
            raise ValueError(f"x must be strictly increasing (violated between samples {bad} and {bad + 1})")
        if np.max(np.abs(steps - steps.mean())) > 1e-8 * max(1.0, abs(steps.mean())) + 1e-12:
            raise ValueError("x must be uniformly spaced")
        return self

    @classmethod
    def from_function(
        cls, func: Callable[[np.ndarray], np.ndarray], x_min: float, x_max: float, n: int, label: str = ""
    ) -> "InitialProfile":
        x = np.linspace(x_min, x_max, n)
        return cls(x=x, q=np.asarray(func(x), dtype=float), label=label)

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    def boundary_residuals(self) -> tuple[float, float]:
        """|q(x_min) - left| and |q(x_max) - right|."""
        return abs(self.q[0] - self.left_value), abs(self.q[-1] - self.right_value)

    def mass(self) -> float:
        """Trapezoid value of ∫(q² - 1) dx over the grid."""
        return float(trapezoid(self.q**2 - 1.0, self.x))

    def columns(self) -> list[str]:
        return ["x", "q"]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.x, "q": self.q}, columns=self.columns())


class JostPair(BaseModel):
    """Modified Jost matrices μ₊(z; x), μ₋(z; x) on the profile grid."""

    model_config = {"arbitrary_types_allowed": True}

    z: complex = Field(..., description="Spectral point")
    x: np.ndarray = Field(..., description="Grid the matrices are sampled on")
    mu_plus: np.ndarray = Field(..., description="μ₊, shape (len(x), 2, 2), normalized at x_max")
    mu_minus: np.ndarray = Field(..., description="μ₋, shape (len(x), 2, 2), normalized at x_min")
    analytic_only: bool = Field(default=False, description="Only the columns analytic at z were computed")

    def determinant_defect(self) -> float:
        """max |det μ± - (1 - z⁻²)| over the grid (computed columns only)."""
        target = 1.0 - self.z**-2
        worst = 0.0
        for mu in (self.mu_plus, self.mu_minus):
            if np.all(np.isfinite(mu)):
                det = mu[:, 0, 0] * mu[:, 1, 1] - mu[:, 0, 1] * mu[:, 1, 0]
                worst = max(worst, float(np.max(np.abs(det - target))))
        return worst


class ScatteringSample(BaseModel):
    """a, b and r = b/a at one real z."""

    z: float = Field(..., description="Real spectral point off {0, ±1}")
    a: complex = Field(..., description="Scattering coefficient a(z)")
    b: complex = Field(..., description="Scattering coefficient b(z)")

    @property
    def r(self) -> complex:
        return self.b / self.a

    @property
    def unitarity_defect(self) -> float:
        return abs(abs(self.a) ** 2 - abs(self.b) ** 2 - 1.0)


class Pole(BaseModel):
    """One zero ηₙ of a(z) on the upper unit semicircle with its residue data."""

    eta: complex = Field(..., description="Zero of a on |z| = 1, Im > 0")
    norming: complex = Field(..., description="Norming constant cₙ = 2ηₙ / ∫|Φ₋,₂(ηₙ)|²")
    gamma: Optional[complex] = Field(default=None, description="Connection coefficient, Φ₊,₁ = γΦ₋,₂ at ηₙ")
    a_prime: Optional[complex] = Field(default=None, description="a′(ηₙ)")
    residue_constant: Optional[complex] = Field(default=None, description="γₙ / a′(ηₙ), kept as a diagnostic")
    self_conjugate: bool = Field(default=False, description="ηₙ = -conj(ηₙ); listed once")
    velocity: Optional[float] = Field(default=None, description="Soliton velocity -4 - 2cos(2 arg ηₙ)")

    @field_validator("eta")
    @classmethod
    def _on_upper_circle(cls, value: complex) -> complex:
        if abs(abs(value) - 1.0) > 1e-8 or value.imag <= 0:
            raise ValueError(f"pole {value} is not on the upper unit semicircle")
        return value


class DiscreteSpectrum(BaseModel):
    """Zeros of a(z) in the upper half plane with norming constants."""

    poles: List[Pole] = Field(default_factory=list, description="Simple zeros of a, ordered by argument")
    notes: List[str] = Field(default_factory=list, description="Multiplicity or convergence remarks")

    @property
    def etas(self) -> np.ndarray:
        return np.array([p.eta for p in self.poles], dtype=complex)

    @property
    def norming_constants(self) -> np.ndarray:
        return np.array([p.norming for p in self.poles], dtype=complex)

    def __len__(self) -> int:
        return len(self.poles)


class ReflectionTable(BaseModel):
    """Reflection coefficient on a sorted real grid avoiding 0 and ±1."""

    model_config = {"arbitrary_types_allowed": True}

    grid: np.ndarray = Field(..., description="Sorted real ζⱼ")
    r: np.ndarray = Field(..., description="Complex r(ζⱼ)")
    log1m_r2: np.ndarray = Field(..., description="log(1 - |r(ζⱼ)|²), stored at full precision")
    a: Optional[np.ndarray] = Field(default=None, description="a(ζⱼ) when computed from a profile")
    r_at_one: Optional[complex] = Field(default=None, description="r(1) limit")
    r_at_minus_one: Optional[complex] = Field(default=None, description="r(-1) limit")
    generic: bool = Field(default=False, description="|r(±1)| = 1 (log-singular density at ±1)")
    margin: float = Field(default=0.0, description="Smallest distance of the grid to {0, ±1}")

    @field_validator("grid", "log1m_r2", mode="before")
    @classmethod
    def _as_real(cls, value: object) -> np.ndarray:
        return np.asarray(value, dtype=float)

    @field_validator("r", mode="before")
    @classmethod
    def _as_complex(cls, value: object) -> np.ndarray:
        return np.asarray(value, dtype=complex)

    @model_validator(mode="after")
    def _check(self) -> "ReflectionTable":
        if self.grid.ndim != 1 or self.r.shape != self.grid.shape or self.log1m_r2.shape != self.grid.shape:
            raise ValueError("grid, r and log1m_r2 must be one-dimensional and of equal length")
        if self.grid.size >= 2 and np.any(np.diff(self.grid) <= 0):
            raise ValueError("reflection grid must be strictly increasing")
        if np.any(np.abs(self.r) > 1.0 + 1e-12):
            bad = int(np.argmax(np.abs(self.r)))
            raise ValueError(f"|r| > 1 at ζ = {self.grid[bad]}")
        return self

    @classmethod
    def from_values(cls, grid: np.ndarray, r: np.ndarray, **kwargs: object) -> "ReflectionTable":
        grid = np.asarray(grid, dtype=float)
        r = np.asarray(r, dtype=complex)
        return cls(grid=grid, r=r, log1m_r2=np.log1p(-np.abs(r) ** 2), **kwargs)

    @classmethod
    def reflectionless(cls, grid: np.ndarray) -> "ReflectionTable":
        grid = np.asarray(grid, dtype=float)
        return cls.from_values(grid, np.zeros_like(grid, dtype=complex), r_at_one=0j, r_at_minus_one=0j)


class ScatteringData(BaseModel):
    """Reflection table, discrete spectrum and conserved mass at time t."""

    model_config = {"arbitrary_types_allowed": True}

    table: ReflectionTable = Field(..., description="Reflection coefficient table")
    spectrum: DiscreteSpectrum = Field(default_factory=DiscreteSpectrum, description="Discrete spectrum")
    mass: float = Field(..., description="∫(q² - 1) dx")
    time: float = Field(default=0.0, description="Evaluation time")

    def to_payload(self) -> dict:
        table = self.table
        payload: Dict[str, object] = {
            "grid": table.grid.tolist(),
            "r_re": table.r.real.tolist(),
            "r_im": table.r.imag.tolist(),
            "log1m_r2": table.log1m_r2.tolist(),
            "poles": [
                {"re": p.eta.real, "im": p.eta.imag, "c_re": p.norming.real, "c_im": p.norming.imag}
                for p in self.spectrum.poles
            ],
            "mass": self.mass,
            "time": self.time,
            "generic": table.generic,
            "margin": table.margin,
        }
        for key, value in (("r_at_one", table.r_at_one), ("r_at_minus_one", table.r_at_minus_one)):
            payload[key] = None if value is None else {"re": value.real, "im": value.imag}
        return payload

    @classmethod
    def from_payload(cls, payload: dict) -> "ScatteringData":
        grid = np.asarray(payload["grid"], dtype=float)
        r = np.asarray(payload["r_re"], dtype=float) + 1j * np.asarray(payload["r_im"], dtype=float)
        log1m = payload.get("log1m_r2")
        limits = {}
        for key in ("r_at_one", "r_at_minus_one"):
            value = payload.get(key)
            limits[key] = None if value is None else complex(value["re"], value["im"])
        table = ReflectionTable(
            grid=grid,
            r=r,
            log1m_r2=np.log1p(-np.abs(r) ** 2) if log1m is None else np.asarray(log1m, dtype=float),
            generic=bool(payload.get("generic", False)),
            margin=float(payload.get("margin", 0.0)),
            **limits,
        )
        poles = []
        for p in payload.get("poles", []):
            eta = complex(p["re"], p["im"])
            poles.append(Pole(eta=eta, norming=complex(p["c_re"], p["c_im"]), self_conjugate=abs(eta.real) < 1e-10))
        return cls(
            table=table,
            spectrum=DiscreteSpectrum(poles=poles),
            mass=float(payload["mass"]),
            time=float(payload.get("time", 0.0)),
        )


class SymmetryReport(BaseModel):
    """Deviations of the reflection symmetries on a sampled table."""

    tolerance: float = Field(..., description="Pass threshold")
    deviations: Dict[str, float] = Field(..., description="Max deviation per relation")
    flagged: Dict[str, List[float]] = Field(default_factory=dict, description="Grid points exceeding the tolerance")

    @property
    def passed(self) -> bool:
        return all(dev <= self.tolerance for dev in self.deviations.values())


class ZGridOptions(BaseModel):
    """Construction of the default real z grid ζ = ±exp(w)."""

    margin: float = Field(default=1e-4, gt=0, description="Smallest |w|, i.e. log-distance to ±1")
    ratio: float = Field(default=1.02, gt=1, description="Geometric grading ratio of |w| near ±1")
    switch: float = Field(default=0.5, gt=0, description="|w| beyond which the spacing is uniform")
    step: float = Field(default=0.02, gt=0, description="Uniform spacing in w beyond the switch")
    zmax: float = Field(default=40.0, gt=1, description="Largest |ζ|; the smallest is 1/zmax")


class JostOptions(BaseModel):
    """Controls for the Jost-solution sweeps."""

    match_point: float = Field(default=0.0, description="Interior matching point x₀ (snapped to the grid)")
    truncation_tol: float = Field(default=1e-8, gt=0, description="Allowed |q∓1| at the truncated endpoints")
    substeps: int = Field(default=1, ge=1, description="Magnus sub-steps per grid cell")
    edge_margin: float = Field(default=1e-6, gt=0, description="Minimum distance of requested z to {0, ±1}")


class RootScanOptions(BaseModel):
    """Controls for the zero search of a(z) on the upper unit semicircle."""

    samples: int = Field(default=2000, ge=16, description="Arc samples in (0, π)")
    xtol: float = Field(default=1e-12, gt=0, description="Angle tolerance of the bracketed refinement")
    derivative_step: float = Field(default=1e-6, gt=0, description="Central-difference step for a′")
    zero_tol: float = Field(default=1e-6, gt=0, description="Max |a(η)| accepted as a zero")
    simple_tol: float = Field(default=1e-8, gt=0, description="Min |a′(η)| accepted as a simple zero")
    richardson_h: float = Field(default=0.02, gt=0, description="Largest offset h of r(1 ± h)")
    richardson_levels: int = Field(default=5, ge=2, description="Number of halvings of h")
    richardson_tol: float = Field(default=1e-6, gt=0, description="Convergence tolerance of the extrapolation")
    generic_tol: float = Field(default=1e-3, gt=0, description="|r(1)| > 1 - tol marks generic data")


class ReflectionLimit(BaseModel):
    """r(±1) obtained by Richardson extrapolation of symmetric averages of r(±1 ± h)."""

    r_at_one: complex = Field(..., description="Extrapolated r(1)")
    r_at_minus_one: complex = Field(..., description="Extrapolated r(-1)")
    generic: bool = Field(..., description="|r(1)| > 1 - generic_tol")
    offsets: List[float] = Field(default_factory=list, description="Offsets h used")
    samples: List[complex] = Field(default_factory=list, description="Symmetric averages of r(1 ± h)")
    estimate_change: float = Field(default=0.0, description="Change of the last extrapolation step")
