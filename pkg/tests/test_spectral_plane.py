"""
Tests for the spectral-plane geometry: θ, its signature table, saddle points and regions.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from returns.result import Failure, Success
from scipy.optimize import brentq

from mkdv_transition.core.problem_types import ErrorKind, RegionClass, SaddleRegime
from mkdv_transition.solvers.spectral_plane import (
    classify_region,
    critical_circle_points,
    critical_line_radii,
    re_2i_theta,
    re_2i_theta_polar,
    saddle_points,
    signature_at,
    signature_grid,
    soliton_velocity,
    theta,
    theta_prime,
    uniformize,
)

coordinate = st.floats(min_value=0.05, max_value=4.0, allow_nan=False)
slope = st.floats(min_value=-12.0, max_value=12.0, allow_nan=False)


class TestUniformization:
    """Test cases for the uniformizing variable and the phase function."""

    def test_uniformize_identities(self):
        """k² - λ² = 1 and z = k + λ."""
        for z in (2.0, 0.5 + 0.3j, -1.2j, 3.0 - 1.0j):
            lam, k = uniformize(z)
            assert abs(k * k - lam * lam - 1.0) < 1e-12
            assert abs(k + lam - z) < 1e-12

    def test_origin_is_rejected(self):
        """The uniformization is singular at z = 0."""
        with pytest.raises(ValueError):
            uniformize(0.0)
        with pytest.raises(ValueError):
            re_2i_theta(0.0, 0.0, -6.0)

    def test_theta_value(self):
        """θ(2i; -6) = -7.8125i from λ = 1.25i, k = 0.75i."""
        assert abs(theta(2j, -6.0) - (-7.8125j)) < 1e-12

    def test_theta_prime_matches_difference_quotient(self):
        """The closed form of θ′ agrees with a central difference."""
        for z in (1.3 + 0.4j, -0.7 + 1.1j, 2.0j):
            h = 1e-6
            numeric = (theta(z + h, -5.0) - theta(z - h, -5.0)) / (2.0 * h)
            assert abs(theta_prime(z, -5.0) - numeric) < 1e-6 * max(1.0, abs(numeric))

    @given(u=coordinate, v=coordinate, xi=slope)
    @settings(max_examples=60, deadline=None)
    def test_closed_form_matches_direct(self, u, v, xi):
        """Re(2iθ) from the closed form equals the real part of 2iθ(z)."""
        direct = (2j * theta(complex(u, v), xi)).real
        assert math.isclose(re_2i_theta(u, v, xi), direct, rel_tol=1e-9, abs_tol=1e-9)

    @given(u=coordinate, v=coordinate, xi=slope)
    @settings(max_examples=60, deadline=None)
    def test_sign_symmetries(self, u, v, xi):
        """Re(2iθ) is odd under z → z̄ and z → 1/z and even under z → -z̄."""
        value = re_2i_theta(u, v, xi)
        scale = 1e-9 * max(1.0, abs(value))
        assert abs(re_2i_theta(u, -v, xi) + value) <= scale
        assert abs(re_2i_theta(-u, v, xi) - value) <= scale
        inverse = 1.0 / complex(u, v)
        assert abs(re_2i_theta(inverse.real, inverse.imag, xi) + value) <= scale

    @given(u=coordinate, v=coordinate, xi=slope)
    @settings(max_examples=40, deadline=None)
    def test_polar_form(self, u, v, xi):
        """The polar closed form agrees with the Cartesian one."""
        radius, angle = abs(complex(u, v)), cmath.phase(complex(u, v))
        expected = re_2i_theta(u, v, xi)
        assert math.isclose(re_2i_theta_polar(radius, angle, xi), expected, rel_tol=1e-9, abs_tol=1e-9)


class TestCriticalLines:
    """Test cases for the zero set of Re(2iθ)."""

    def test_critical_radii_are_reciprocal_zeros(self):
        """The two radii multiply to 1 and Re(2iθ) vanishes there."""
        radii = critical_line_radii(0.3, -8.0)
        assert radii is not None
        l1, l2 = radii
        assert l1 <= l2
        assert abs(l1 * l2 - 1.0) < 1e-12
        for radius in radii:
            assert abs(re_2i_theta_polar(radius, 0.3, -8.0)) < 1e-9

    def test_no_crossing_on_some_rays(self):
        """Rays where F(l)² would fall below 4 carry no critical point."""
        assert critical_line_radii(0.3, 0.0) is None

    def test_unit_circle_crossings(self):
        """|z| = 1 meets the critical line at ±1 for ξ = -6, at ±i for ξ = -2, nowhere for ξ = 0."""
        at_merge = critical_circle_points(-6.0)
        assert len(at_merge) == 2
        assert min(abs(z - 1.0) for z in at_merge) < 1e-12
        assert min(abs(z + 1.0) for z in at_merge) < 1e-12

        at_kink = critical_circle_points(-2.0)
        assert len(at_kink) == 2
        assert min(abs(z - 1j) for z in at_kink) < 1e-12

        assert critical_circle_points(0.0) == []

    def test_soliton_velocity(self):
        """A zero at η = i travels with ξ = -2, one at e^{iπ/4} with ξ = -4."""
        assert abs(soliton_velocity(1j) + 2.0) < 1e-12
        assert abs(soliton_velocity(cmath.exp(0.25j * math.pi)) + 4.0) < 1e-12


class TestSaddlePoints:
    """Test cases for the stationary points of θ."""

    @pytest.mark.parametrize("xi", [-9.0, -6.5, -5.0, -1.0, 3.0, 7.5])
    def test_saddles_are_roots(self, xi):
        """Every returned point annihilates θ′."""
        saddles = saddle_points(xi)
        assert len(saddles.points) == 4
        for z in saddles.points:
            assert abs(theta_prime(z, xi)) < 1e-10

    def test_regimes(self):
        """Real axis left of -6, unit circle in between, imaginary axis right of 6."""
        assert saddle_points(-8.0).regime == SaddleRegime.REAL_AXIS
        assert saddle_points(0.0).regime == SaddleRegime.UNIT_CIRCLE
        assert saddle_points(8.0).regime == SaddleRegime.IMAGINARY_AXIS
        for z in saddle_points(2.0).points:
            assert abs(abs(z) - 1.0) < 1e-12

    def test_merged_saddles(self):
        """At ξ = ±6 the saddles merge pairwise at ±1 and ±i."""
        merged = saddle_points(-6.0)
        assert merged.regime == SaddleRegime.MERGED_REAL
        assert merged.multiplicity == 2
        assert sorted(z.real for z in merged.points) == [-1.0, -1.0, 1.0, 1.0]
        assert saddle_points(6.0).regime == SaddleRegime.MERGED_IMAGINARY

    def test_merging_rate(self):
        """(z₁ - 1)/√(-6 - ξ) tends to 1/(2√3) as ξ → -6⁻."""
        expected = 1.0 / (2.0 * math.sqrt(3.0))
        delta = 1e-6
        z1 = saddle_points(-6.0 - delta).points[0]
        rate = (z1.real - 1.0) / math.sqrt(delta)
        assert abs(rate - expected) / expected < 0.01

    def test_closed_form_matches_root_finder(self):
        """The real saddles agree with a bracketed root search of θ′."""
        xi = -8.0
        z1 = saddle_points(xi).points[0].real
        root = brentq(lambda z: theta_prime(z, xi).real, 1.0, 3.0, xtol=1e-15)
        assert abs(z1 - root) < 1e-10
        inner = saddle_points(xi).points[1].real
        root_inner = brentq(lambda z: theta_prime(z, xi).real, 0.3, 1.0, xtol=1e-15)
        assert abs(inner - root_inner) < 1e-10
        assert abs(z1 * inner - 1.0) < 1e-12

    def test_payload(self):
        """The saddle payload is JSON-ready."""
        payload = saddle_points(-7.0).to_payload()
        assert payload["regime"] == SaddleRegime.REAL_AXIS.value
        assert len(payload["points"]) == 4
        assert payload["fixed"] == [{"re": 0.0, "im": 1.0}, {"re": 0.0, "im": -1.0}]


class TestRegions:
    """Test cases for the region classification."""

    def test_classification(self):
        """One point in each region at t = 10."""
        t = 10.0
        assert classify_region(-6.0 * t, t, 3.0).region == RegionClass.TRANSITION
        assert classify_region(-4.0 * t, t, 3.0).region == RegionClass.SOLITONIC
        assert classify_region(-10.0 * t, t, 3.0).region == RegionClass.SOLITONLESS_LEFT
        assert classify_region(0.0, t, 3.0).region == RegionClass.SOLITONLESS_RIGHT

    def test_band_value(self):
        """band_value = (ξ + 6)t^(2/3)."""
        info = classify_region(-5.9 * 8.0, 8.0, 3.0)
        assert abs(info.band_value - 0.1 * 4.0) < 1e-12
        assert info.region == RegionClass.TRANSITION

    def test_one_sided_window(self):
        """The one-sided band excludes points right of the ray."""
        t = 10.0
        assert classify_region(-5.9 * t, t, 3.0, one_sided=True).region == RegionClass.SOLITONIC
        assert classify_region(-6.05 * t, t, 3.0, one_sided=True).region == RegionClass.TRANSITION

    def test_invalid_time(self):
        """t ≤ 0 is rejected."""
        with pytest.raises(ValueError):
            classify_region(1.0, 0.0, 3.0)


class TestSignatureTable:
    """Test cases for the sign field of Re(2iθ)."""

    def test_grid(self):
        """The sign table has one row per v and one column per u."""
        result = signature_grid(-6.0, [-3.0, 3.0, -3.0, 3.0], [120, 80])
        assert isinstance(result, Success)
        portrait = result.unwrap()
        assert portrait.sign.shape == (80, 120)
        assert set(np.unique(portrait.sign)).issubset({-1, 0, 1})
        assert portrait.sign_at(0.0, 2.0) == 1
        frame = portrait.to_frame()
        assert list(frame.columns) == ["u", "v", "sign"]
        assert len(frame) == 80 * 120

    def test_sign_values(self):
        """Re(2iθ(2i; -6)) = 15.625 > 0 and the real axis is neutral."""
        assert int(signature_at(0.0, 2.0, -6.0)) == 1
        assert int(signature_at(0.0, -2.0, -6.0)) == -1
        assert int(signature_at(1.7, 0.0, -6.0)) == 0

    def test_origin_in_grid(self):
        """A grid through the origin is a validation failure."""
        result = signature_grid(-6.0, [-3.0, 3.0, -3.0, 3.0], [121, 121])
        assert isinstance(result, Failure)
        assert result.failure().kind == ErrorKind.VALIDATION

    def test_bad_bounds(self):
        """Inverted bounds and tiny resolutions are rejected."""
        assert isinstance(signature_grid(-6.0, [3.0, -3.0, -3.0, 3.0], [10, 10]), Failure)
        assert isinstance(signature_grid(-6.0, [-3.0, 3.0, -3.0, 3.0], [1, 10]), Failure)
