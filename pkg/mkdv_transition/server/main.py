#!/usr/bin/env python3
"""
mKdV Transition-Region MCP Server

Model Context Protocol server exposing the mkdv-transition toolkit.

This server provides tools for:
- Spectral-plane geometry (uniformization, phase function, saddle points)
- Region classification of (x, t) points
- Scattering data of analytic profile families
- Ablowitz–Segur solutions of Painlevé II
- Leading-order transition-region values of q(x, t)
"""

import json
import math
import sys
from typing import List, Optional

from fastmcp import FastMCP
from mcp.types import TextContent
from returns.result import Failure, Success

from .. import __version__
from ..core.problem_types import PhiVariant
from ..examples.profiles import profile_family
from ..models.delta_models import PhaseAtOne
from ..models.painleve_models import PIIConfig
from ..solvers.cauchy_delta import phi0_and_amp
from ..solvers.painleve2 import pii_interpolate, solve_pii
from ..solvers.scattering import scattering_data
from ..solvers.spectral_plane import (
    classify_region as classify,
    re_2i_theta,
    saddle_points as saddles,
    signature_at,
    theta,
    uniformize,
)
from ..solvers.transition_asymptotics import q_transition

app = FastMCP(
    name="mkdv-transition",
    instructions="Transition-region asymptotics of the defocusing mKdV equation with step-like initial data",
)


def _complex(value: complex) -> dict:
    return {"re": value.real, "im": value.imag}


def _text(payload: dict) -> List[TextContent]:
    return [TextContent(type="text", text=json.dumps(payload))]


@app.tool("spectral_point")
async def spectral_point(z_re: float, z_im: float, xi: float = -6.0) -> List[TextContent]:
    """
    Evaluate the uniformized spectral variables and the phase function at one point.

    Args:
        z_re: Real part of z
        z_im: Imaginary part of z
        xi: Ray slope ξ = x/t

    Returns:
        λ, k, θ(z; ξ), Re(2iθ) and its sign
    """
    try:
        z = complex(z_re, z_im)
        lam, k = uniformize(z)
        return _text(
            {
                "z": _complex(z),
                "lambda": _complex(lam),
                "k": _complex(k),
                "theta": _complex(theta(z, xi)),
                "re_2i_theta": float(re_2i_theta(z_re, z_im, xi)),
                "sign": int(signature_at(z_re, z_im, xi)),
            }
        )
    except Exception as e:
        return [TextContent(type="text", text=f"Error in spectral_point: {e!s}")]


@app.tool("saddle_points")
async def saddle_points(xi: float) -> List[TextContent]:
    """
    Stationary points of θ(z; ξ) for a ray slope ξ.

    Args:
        xi: Ray slope ξ = x/t

    Returns:
        The four ξ-dependent saddle points, the fixed saddles ±i, the regime and the multiplicity
    """
    try:
        return _text(saddles(xi).to_payload())
    except Exception as e:
        return [TextContent(type="text", text=f"Error in saddle_points: {e!s}")]


@app.tool("classify_region")
async def classify_region(x: float, t: float, band_c: float = 3.0, one_sided: bool = False) -> List[TextContent]:
    """
    Asymptotic region of a space-time point.

    Args:
        x: Space
        t: Time, positive
        band_c: Half-width C of the transition band |x/t + 6|·t^(2/3) < C
        one_sided: Use the one-sided window -C < (x/t + 6)·t^(2/3) < 0

    Returns:
        Region name, ξ and the band value
    """
    try:
        info = classify(x, t, band_c, one_sided)
        return _text(info.model_dump(mode="json"))
    except Exception as e:
        return [TextContent(type="text", text=f"Error in classify_region: {e!s}")]


@app.tool("scatter_profile")
async def scatter_profile(family: str = "perturbed_kink", amplitude: float = 0.3) -> List[TextContent]:
    """
    Scattering data and the phase at z = 1 of an analytic initial profile.

    Args:
        family: 'kink' (tanh x) or 'perturbed_kink' (tanh x + A·exp(-x²))
        amplitude: Perturbation amplitude A

    Returns:
        Zeros of a with norming constants, r(1), p, both φ₀ variants and the mass
    """
    try:
        profile = profile_family(family, amplitude)
        match scattering_data(profile):
            case Success(data):
                pass
            case Failure(error):
                return [TextContent(type="text", text=f"Error computing scattering data: {error}")]
        match phi0_and_amp(data.table, data.spectrum):
            case Success(phase):
                return _text(
                    {
                        "family": family,
                        "poles": [
                            {"eta": _complex(p.eta), "norming": _complex(p.norming), "velocity": p.velocity}
                            for p in data.spectrum.poles
                        ],
                        "r_at_one": _complex(complex(data.table.r_at_one)),
                        "mass": data.mass,
                        "phase": phase.to_payload(),
                    }
                )
            case Failure(error):
                return [TextContent(type="text", text=f"Error computing the phase: {error}")]
    except Exception as e:
        return [TextContent(type="text", text=f"Error in scatter_profile: {e!s}")]


@app.tool("solve_painleve")
async def solve_painleve(
    p: float, s_values: Optional[List[float]] = None, s_min: float = -10.0, method: str = "DOP853"
) -> List[TextContent]:
    """
    Ablowitz–Segur solution u(s) ~ -p·Ai(s) of u″ = 2u³ + su.

    Args:
        p: Amplitude in [0, 1]
        s_values: Points where u, u′ and ∫ₛ^∞u² are reported (default -8..8 step 2)
        s_min: Left end of the integration grid
        method: 'DOP853' or 'RK4'

    Returns:
        Sampled values, the residual sup-norm and the boundary-case flag
    """
    try:
        config = PIIConfig(p=p, s_min=s_min, method=method)
        match solve_pii(config):
            case Success(sol):
                points = s_values if s_values is not None else [float(s) for s in range(-8, 9, 2)]
                samples = []
                for s in points:
                    u, up, tail = pii_interpolate(sol, s)
                    samples.append({"s": s, "u": u, "uprime": up, "I": tail})
                return _text(
                    {
                        "p": sol.p,
                        "samples": samples,
                        "residual_sup": sol.residual_sup,
                        "boundary_case": sol.boundary_case,
                    }
                )
            case Failure(error):
                return [TextContent(type="text", text=f"Error solving Painlevé II: {error}")]
    except Exception as e:
        return [TextContent(type="text", text=f"Error in solve_painleve: {e!s}")]


@app.tool("transition_value")
async def transition_value(
    x: float,
    t: float,
    p: float,
    phi0: float,
    variant: str = "integral",
    band_c: float = 3.0,
) -> List[TextContent]:
    """
    Leading-order q(x, t) = -1 + (3t)^(-1/3)·u(s)·cos φ₀ in the transition region.

    Args:
        x: Space
        t: Time, positive
        p: Amplitude |r(1)|, e.g. from scatter_profile
        phi0: Phase φ₀ in radians, e.g. from scatter_profile
        variant: Label of the φ₀ formula the phase came from
        band_c: Transition band half-width C

    Returns:
        s, q_leading, the amplitude factor, the error scale and the in-band flag
    """
    try:
        reduced = math.remainder(phi0, 2.0 * math.pi)
        reduced = math.pi if reduced <= -math.pi else reduced
        phase = PhaseAtOne(p=p, phi0=reduced, generic=p >= 1.0, phi0_blaschke=reduced)
        match solve_pii(PIIConfig(p=p)):
            case Success(sol):
                pass
            case Failure(error):
                return [TextContent(type="text", text=f"Error solving Painlevé II: {error}")]
        match q_transition(x, t, phase, sol, PhiVariant(variant), band_c):
            case Success(result):
                return _text(result.model_dump(mode="json"))
            case Failure(error):
                return [TextContent(type="text", text=f"Error evaluating the transition formula: {error}")]
    except Exception as e:
        return [TextContent(type="text", text=f"Error in transition_value: {e!s}")]


def main() -> None:
    """Main function to run the MCP server."""
    print(f"Starting mKdV transition-region MCP server {__version__}...", file=sys.stderr)
    app.run()


if __name__ == "__main__":
    main()
