"""
Tests for the Airy function and the Ablowitz–Segur solutions of Painlevé II.
"""

import numpy as np
import pytest
from pydantic import ValidationError
from returns.result import Failure, Success
from scipy.integrate import quad, simpson
from scipy.special import airy

from mkdv_transition.core.problem_types import ErrorKind, PIIMethod
from mkdv_transition.models.painleve_models import PIIConfig
from mkdv_transition.solvers.painleve2 import (
    airy_ai,
    airy_tail_integral,
    ode_residual,
    pii_interpolate,
    pii_m1,
    solve_pii,
)


class TestAiry:
    """Test cases for the self-contained Airy evaluation."""

    @pytest.mark.parametrize("s", [0.0, 1.0, -1.0, 2.0, -2.0])
    def test_series_points(self, s):
        """Ai and Ai′ agree with scipy to 1e-10 near the origin."""
        value = airy_ai(s)
        ai, aip, _, _ = airy(s)
        assert abs(value.ai - ai) < 1e-10
        assert abs(value.aip - aip) < 1e-10

    def test_series_window(self):
        """Absolute agreement 1e-8 across the Maclaurin window [-8, 6]."""
        for s in np.linspace(-8.0, 6.0, 57):
            value = airy_ai(s)
            ai, aip, _, _ = airy(s)
            assert abs(value.ai - ai) < 1e-8
            assert abs(value.aip - aip) < 1e-8

    @pytest.mark.parametrize("s", [6.5, 9.0, 12.0, 20.0])
    def test_decaying_side(self, s):
        """Relative agreement on the exponentially small side."""
        value = airy_ai(s)
        ai, aip, _, _ = airy(s)
        assert abs(value.ai - ai) / abs(ai) < 1e-8
        assert abs(value.aip - aip) / abs(aip) < 1e-8

    @pytest.mark.parametrize("s", [-8.5, -11.0, -15.0, -20.0])
    def test_oscillating_side(self, s):
        """Absolute agreement on the oscillatory side."""
        value = airy_ai(s)
        ai, aip, _, _ = airy(s)
        assert abs(value.ai - ai) < 1e-9
        assert abs(value.aip - aip) < 1e-8

    @pytest.mark.parametrize("edge", [-8.0, 6.0])
    def test_switch_is_continuous(self, edge):
        """Series and asymptotic branches meet at the window edges."""
        left, right = airy_ai(edge - 1e-9), airy_ai(edge + 1e-9)
        assert abs(left.ai - right.ai) < 1e-8
        assert abs(left.aip - right.aip) < 1e-8

    def test_range(self):
        """Evaluation is confined to [-20, 20]."""
        with pytest.raises(ValueError):
            airy_ai(25.0)

    def test_tail_integral(self):
        """∫ₛ^∞ Ai² = Ai′(s)² - s·Ai(s)²."""
        for s in (-3.0, 0.0, 1.5):
            expected, _ = quad(lambda x: airy(x)[0] ** 2, s, np.inf, epsabs=1e-14, limit=200)
            assert abs(airy_tail_integral(s) - expected) < 1e-9


class TestAblowitzSegur:
    """Test cases for u″ = 2u³ + su with u ~ -p·Ai(s)."""

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.9])
    def test_residual(self, pii_solutions, p):
        """The integrated ODE residual stays below 1e-8 on [-6, 9]."""
        sol = pii_solutions[p]
        assert sol.residual_sup < 1e-8
        assert np.max(ode_residual(sol.s, sol.u, sol.uprime)) == pytest.approx(sol.residual_sup)
        assert sol.s_range == pytest.approx((-6.0, 9.0))
        assert not sol.boundary_case

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.9])
    def test_airy_anchor(self, pii_solutions, p):
        """|u + p·Ai| < 1e-6 on [6, 8]."""
        sol = pii_solutions[p]
        mask = (sol.s >= 6.0) & (sol.s <= 8.0)
        ai = airy(sol.s[mask])[0]
        assert np.max(np.abs(sol.u[mask] + p * ai)) < 1e-6

    def test_tail_integral_consistency(self, pii_solutions):
        """I(s) = I(s_start) + ∫ₛ^{s_start} u²."""
        sol = pii_solutions[0.5]
        x = sol.s[::-1]
        u2 = sol.u[::-1] ** 2
        integral = simpson(u2, x=x)
        assert abs(sol.tail[-1] - (sol.tail[0] + integral)) < 1e-6
        assert np.all(np.diff(sol.tail) >= -1e-15)

    def test_amplitude_ordering(self, pii_solutions):
        """Larger p gives a more negative u(0)."""
        values = [pii_interpolate(pii_solutions[p], 0.0)[0] for p in (0.2, 0.5, 0.9)]
        assert values[0] > values[1] > values[2]
        assert values[2] < 0.0

    def test_rk4_agrees(self, pii_solutions):
        """The fixed-step RK4 path reproduces the adaptive solution."""
        result = solve_pii(PIIConfig(p=0.5, s_min=-6.0, method=PIIMethod.RK4))
        assert isinstance(result, Success)
        rk4 = result.unwrap()
        assert rk4.method == PIIMethod.RK4
        assert np.max(np.abs(rk4.u - pii_solutions[0.5].u)) < 1e-7

    def test_anchor_sensitivity(self, pii_solutions):
        """Moving the Airy anchor from 9 to 10 changes u by less than 1e-8 on [-6, 6]."""
        moved = solve_pii(PIIConfig(p=0.5, s_start=10.0, s_min=-6.0)).unwrap()
        for s in np.linspace(-6.0, 6.0, 13):
            assert abs(pii_interpolate(moved, s)[0] - pii_interpolate(pii_solutions[0.5], s)[0]) < 1e-8

    @pytest.mark.parametrize("s_start", [8.0, 10.0, 12.0])
    def test_anchor_choice(self, pii_solutions, s_start):
        """Anchors at 8, 10 and 12 give the same u(0) to 1e-7."""
        moved = solve_pii(PIIConfig(p=0.5, s_start=s_start, s_min=-6.0)).unwrap()
        assert abs(pii_interpolate(moved, 0.0)[0] - pii_interpolate(pii_solutions[0.5], 0.0)[0]) < 1e-7

    def test_zero_amplitude(self):
        """p = 0 is the zero solution."""
        sol = solve_pii(PIIConfig(p=0.0)).unwrap()
        assert np.all(sol.u == 0.0)
        assert np.all(sol.tail == 0.0)

    def test_boundary_case_flag(self):
        """p = 1 is accepted and marked as the Hastings–McLeod-type boundary."""
        result = solve_pii(PIIConfig(p=1.0, s_min=-4.0))
        assert isinstance(result, Success)
        assert result.unwrap().boundary_case

    def test_amplitude_range(self):
        """p outside [0, 1] and an inverted interval are rejected by the config model."""
        with pytest.raises(ValidationError):
            PIIConfig(p=1.2)
        with pytest.raises(ValidationError):
            PIIConfig(p=0.5, s_start=9.0, s_min=9.5)
        with pytest.raises(ValidationError):
            PIIConfig(p=0.5, s_start=4.0)

    def test_blowup_is_numerical_failure(self):
        """A tiny blow-up threshold turns into a numerical failure with its location."""
        result = solve_pii(PIIConfig(p=0.9, s_min=-6.0, blowup=0.1))
        assert isinstance(result, Failure)
        error = result.failure()
        assert error.kind == ErrorKind.NUMERICAL
        assert error.exit_code == 3
        assert "blowup_at" in error.details


class TestInterpolation:
    """Test cases for evaluation between grid points."""

    def test_interpolation_at_nodes(self, pii_solutions):
        """Hermite interpolation reproduces the grid values."""
        sol = pii_solutions[0.9]
        i = 700
        u, up, tail = pii_interpolate(sol, float(sol.s[i]))
        assert u == pytest.approx(sol.u[i], abs=1e-14)
        assert up == pytest.approx(sol.uprime[i], abs=1e-14)
        assert tail == pytest.approx(sol.tail[i], abs=1e-14)

    def test_out_of_range(self, pii_solutions):
        """s beyond the grid raises."""
        with pytest.raises(ValueError):
            pii_interpolate(pii_solutions[0.5], -7.0)

    def test_m1_structure(self, pii_solutions):
        """M₁ is traceless with equal off-diagonal entries u/2."""
        sol = pii_solutions[0.5]
        m1 = pii_m1(sol, 0.3)
        u, _, tail = pii_interpolate(sol, 0.3)
        assert abs(np.trace(m1)) == 0.0
        assert m1[0, 1] == m1[1, 0] == pytest.approx(0.5 * u)
        assert m1[0, 0] == pytest.approx(-0.5j * tail)

    def test_table_columns(self, pii_solutions):
        """The exported table has the documented columns."""
        frame = pii_solutions[0.2].to_frame()
        assert list(frame.columns) == ["s", "u", "uprime", "I"]
        assert len(frame) == pii_solutions[0.2].s.size
