"""
Airy function and the Ablowitz–Segur solutions u(s) ~ -p·Ai(s) of Painlevé II, u″ = 2u³ + su.
"""

import logging
import math
from typing import Tuple

import numpy as np
from returns.result import Result, Success
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from ..core.base_models import StageError, numerical_failure
from ..core.problem_types import PIIMethod, Stage
from ..models.painleve_models import AiryValue, PIIConfig, PIISolution

logger = logging.getLogger(__name__)

AIRY_RANGE = 20.0
_SERIES_WINDOW = (-8.0, 6.0)
_C1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_C2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)


def _airy_series(s: float) -> Tuple[float, float]:
    """Maclaurin series Ai = c₁f - c₂g and its derivative."""
    cube = s * s * s
    f, g = 1.0, s
    fp, gp = 0.0, 1.0
    f_term, g_term = 1.0, s
    fp_term, gp_term = 0.5 * s * s, 1.0
    fp += fp_term
    for k in range(1, 200):
        f_term *= cube / ((3 * k) * (3 * k - 1))
        g_term *= cube / ((3 * k + 1) * (3 * k))
        gp_term *= cube / ((3 * k - 2) * (3 * k))
        f += f_term
        g += g_term
        gp += gp_term
        if k >= 2:
            fp_term *= cube / ((3 * k - 3) * (3 * k - 1))
            fp += fp_term
        largest = max(abs(f_term), abs(g_term), abs(fp_term), abs(gp_term))
        if largest < 1e-17 * max(1.0, abs(f), abs(g)):
            break
    return _C1 * f - _C2 * g, _C1 * fp - _C2 * gp


def _asymptotic_coefficients(n: int) -> Tuple[np.ndarray, np.ndarray]:
    u = np.ones(n)
    v = np.ones(n)
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        v[k] = -(6 * k + 1) / (6 * k - 1) * u[k]
    return u, v


_U, _V = _asymptotic_coefficients(40)


def _truncated(coefficients: np.ndarray, zeta: float, parity: int = -1) -> float:
    """Σ (-1)^k c_k ζ^{-k}, optionally only even (parity 0) or odd (parity 1) k, stopped at the smallest term."""
    total, previous = 0.0, math.inf
    for k, c in enumerate(coefficients):
        if parity >= 0 and k % 2 != parity:
            continue
        term = c / zeta**k
        if abs(term) > previous or abs(term) < 1e-17:
            break
        sign = (-1) ** (k // 2) if parity >= 0 else (-1) ** k
        total += sign * term
        previous = abs(term)
    return total


def _airy_asymptotic(s: float) -> Tuple[float, float]:
    if s > 0:
        zeta = 2.0 / 3.0 * s**1.5
        scale = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
        ai = scale * s**-0.25 * _truncated(_U, zeta)
        aip = -scale * s**0.25 * _truncated(_V, zeta)
        return ai, aip
    x = -s
    zeta = 2.0 / 3.0 * x**1.5
    c, sn = math.cos(zeta - math.pi / 4.0), math.sin(zeta - math.pi / 4.0)
    ai = (c * _truncated(_U, zeta, 0) + sn * _truncated(_U, zeta, 1)) / (math.sqrt(math.pi) * x**0.25)
    aip = x**0.25 * (sn * _truncated(_V, zeta, 0) - c * _truncated(_V, zeta, 1)) / math.sqrt(math.pi)
    return ai, aip


def airy_ai(s: float) -> AiryValue:
    """Ai(s) and Ai′(s) on [-20, 20]: Maclaurin series on [-8, 6], asymptotic expansions outside."""
    s = float(s)
    if not -AIRY_RANGE <= s <= AIRY_RANGE:
        raise ValueError(f"Airy evaluation supported on [-{AIRY_RANGE:g}, {AIRY_RANGE:g}], got s = {s}")
    lo, hi = _SERIES_WINDOW
    ai, aip = _airy_series(s) if lo <= s <= hi else _airy_asymptotic(s)
    return AiryValue(s=s, ai=ai, aip=aip)


def airy_tail_integral(s: float) -> float:
    """∫ₛ^∞ Ai(ζ)² dζ = Ai′(s)² - s·Ai(s)²."""
    value = airy_ai(s)
    return value.aip**2 - s * value.ai**2


def _rhs(s: float, y: np.ndarray) -> np.ndarray:
    u, up, _ = y
    return np.array([up, 2.0 * u**3 + s * u, -u * u])


def _rk4(config: PIIConfig, grid: np.ndarray, y0: np.ndarray) -> np.ndarray:
    """Classical RK4 with a fixed step dividing the output spacing."""
    substeps = max(1, math.ceil(config.ds / config.rk4_step))
    h = -config.ds / substeps
    out = np.empty((grid.size, 3))
    out[0] = y = y0.copy()
    s = grid[0]
    for i in range(1, grid.size):
        for _ in range(substeps):
            k1 = _rhs(s, y)
            k2 = _rhs(s + 0.5 * h, y + 0.5 * h * k1)
            k3 = _rhs(s + 0.5 * h, y + 0.5 * h * k2)
            k4 = _rhs(s + h, y + h * k3)
            y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            s += h
            if abs(y[0]) > config.blowup:
                raise FloatingPointError(f"|u| exceeded {config.blowup:g} near s = {s:.6g}")
        s = grid[i]
        out[i] = y
    return out


def ode_residual(s: np.ndarray, u: np.ndarray, uprime: np.ndarray) -> np.ndarray:
    """Simpson defect |u′(s₊) - u′(s₋) - ∫u″| / |s₊ - s₋| at interior grid points."""
    f = 2.0 * u**3 + s * u
    h = s[1:-1] - s[:-2]
    defect = uprime[2:] - uprime[:-2] - h / 3.0 * (f[:-2] + 4.0 * f[1:-1] + f[2:])
    return np.abs(defect) / (2.0 * np.abs(h))


def solve_pii(config: PIIConfig) -> Result[PIISolution, StageError]:
    """Integrate the Ablowitz–Segur solution from s_start down to s_min.

    The anchor is u = -p·Ai, u′ = -p·Ai′ and I = p²(Ai′² - s·Ai²); the tail integral I(s) = ∫ₛ^∞ u²
    is carried as a third component with I′ = -u².

    Args:
        config: Amplitude, anchor, grid and integrator settings

    Returns:
        Result containing a PIISolution or a StageError
    """
    n = int(round((config.s_start - config.s_min) / config.ds)) + 1
    grid = np.linspace(config.s_start, config.s_min, n)
    boundary = config.p == 1.0
    if boundary:
        logger.warning("p = 1: Hastings–McLeod-type boundary case, large negative s is not guaranteed")

    if config.p == 0.0:
        zeros = np.zeros(n)
        return Success(
            PIISolution(
                p=0.0, s=grid, u=zeros, uprime=zeros.copy(), tail=zeros.copy(),
                s_start=config.s_start, method=config.method,
            )
        )

    anchor = airy_ai(config.s_start)
    p = config.p
    y0 = np.array([-p * anchor.ai, -p * anchor.aip, p * p * airy_tail_integral(config.s_start)])

    try:
        if config.method == PIIMethod.RK4:
            values = _rk4(config, grid, y0)
        else:

            def blowup(s: float, y: np.ndarray) -> float:
                return abs(y[0]) - config.blowup

            blowup.terminal = True
            sol = solve_ivp(
                _rhs,
                (config.s_start, config.s_min),
                y0,
                method="DOP853",
                t_eval=grid,
                rtol=config.rtol,
                atol=config.atol,
                events=blowup,
            )
            if sol.status == 1:
                where = float(sol.t_events[0][0])
                return numerical_failure(
                    Stage.PAINLEVE, f"solution blows up near s = {where:.6g}", p=p, blowup_at=where
                )
            if not sol.success:
                return numerical_failure(Stage.PAINLEVE, f"integrator failed: {sol.message}", p=p)
            values = sol.y.T
    except FloatingPointError as e:
        return numerical_failure(Stage.PAINLEVE, f"solution blows up: {e}", p=p)
    except Exception as e:
        return numerical_failure(Stage.PAINLEVE, f"Error integrating Painlevé II: {e}", p=p)

    u, up, tail = values[:, 0], values[:, 1], values[:, 2]
    residual = float(np.max(ode_residual(grid, u, up))) if n >= 3 else 0.0
    logger.info("Painlevé II p = %.6g: u(%g) = %.10g, residual %.3g", p, grid[-1], u[-1], residual)
    return Success(
        PIISolution(
            p=p,
            s=grid,
            u=u,
            uprime=up,
            tail=tail,
            s_start=config.s_start,
            method=config.method,
            residual_sup=residual,
            boundary_case=boundary,
        )
    )


def pii_interpolate(sol: PIISolution, s: float) -> Tuple[float, float, float]:
    """Hermite interpolation of (u, u′, I) at s inside the solution grid."""
    if not sol.contains(s):
        lo, hi = sol.s_range
        raise ValueError(f"s = {s} outside the solution range [{lo}, {hi}]")
    x = sol.s[::-1]
    u, up, tail = sol.u[::-1], sol.uprime[::-1], sol.tail[::-1]
    upp = 2.0 * u**3 + x * u
    s = float(np.clip(s, x[0], x[-1]))
    return (
        float(CubicHermiteSpline(x, u, up)(s)),
        float(CubicHermiteSpline(x, up, upp)(s)),
        float(CubicHermiteSpline(x, tail, -u * u)(s)),
    )


def pii_m1(sol: PIISolution, s: float) -> np.ndarray:
    """M₁(s) = ½[[-i·I(s), u(s)], [u(s), i·I(s)]]."""
    u, _, tail = pii_interpolate(sol, s)
    return 0.5 * np.array([[-1j * tail, u], [u, 1j * tail]], dtype=complex)
