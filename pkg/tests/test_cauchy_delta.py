"""
Tests for δ(z), the Blaschke product, the trace formula and the phase at z = 1.
"""

import math

import numpy as np
import pytest
from returns.result import Failure, Success

from mkdv_transition.core.problem_types import ErrorKind, PhiVariant, Stage
from mkdv_transition.examples.profiles import manufactured_table, reflectionless_data
from mkdv_transition.models.delta_models import CauchyOptions
from mkdv_transition.models.scattering_models import DiscreteSpectrum, Pole, ReflectionTable
from mkdv_transition.solvers.cauchy_delta import (
    blaschke_h,
    cauchy_log_integral,
    delta_at,
    delta_jump_ratio,
    mass_from_spectrum,
    nu_of,
    phi0_and_amp,
    trace_reconstruct_a,
)
from mkdv_transition.solvers.scattering import a_coefficient, default_zgrid

MIRRORED_POINTS = [
    0.3 + 0.2j, 0.9 + 0.05j, 1.1 + 0.4j, 2.0 + 1.0j, -0.5 + 0.7j,
    -1.5 + 0.1j, 5.0 + 3.0j, -7.0 + 0.5j, 0.01 + 0.01j, 0.2j,
]


class TestNu:
    """Test cases for ν = -log(1 - |r|²)/2π."""

    def test_values(self):
        """ν(0) = 0 and ν(0.6) = -log(0.64)/2π."""
        assert nu_of(0.0) == 0.0
        assert nu_of(0.6j) == pytest.approx(-math.log(0.64) / (2.0 * math.pi))

    def test_singular(self):
        """|r| = 1 has no finite ν."""
        with pytest.raises(ValueError):
            nu_of(1.0)


class TestDelta:
    """Test cases for the scalar jump function δ on the manufactured table r = 2ipζ/(1 + ζ²)."""

    def test_jump_ratio(self, half_table):
        """δ₊/δ₋ = 1/(1 - |r(z₀)|²) at z₀ = 0.5."""
        r = 1j * 0.5 * 2.0 * 0.5 / 1.25
        expected = 1.0 / (1.0 - abs(r) ** 2)
        ratio = delta_jump_ratio(0.5, 1e-8, half_table)
        assert abs(ratio - expected) < 1e-3

    def test_jump_ratio_direct_quadrature(self, half_table):
        """The unfolded quadrature gives the same jump."""
        ratio = delta_jump_ratio(2.5, 1e-8, half_table, CauchyOptions(fold=False))
        r = 1j * 0.5 * 2.0 * 2.5 / (1.0 + 2.5**2)
        assert abs(ratio - 1.0 / (1.0 - abs(r) ** 2)) < 1e-3

    def test_normalized_at_infinity(self, half_table):
        """|δ(z) - 1| < 1e-5 at |z| = 10⁶."""
        for z in (1e6j, 1e6 * np.exp(0.3j), 1e6 * np.exp(-2.0j)):
            assert abs(delta_at(z, half_table) - 1.0) < 1e-5

    def test_conjugate_symmetry(self, half_table):
        """δ(z)·conj δ(z̄) = 1."""
        for z in MIRRORED_POINTS:
            product = delta_at(z, half_table) * np.conj(delta_at(np.conj(z), half_table))
            assert abs(product - 1.0) < 1e-10

    def test_inversion_symmetry(self, half_table):
        """δ(1/z)·δ(z) = 1 for symmetric tables."""
        for z in MIRRORED_POINTS:
            assert abs(delta_at(1.0 / z, half_table) * delta_at(z, half_table) - 1.0) < 1e-8

    def test_reflectionless_delta_is_one(self):
        """r ≡ 0 gives δ ≡ 1."""
        table = reflectionless_data().table
        assert abs(cauchy_log_integral(table, 0.4 + 0.3j)) < 1e-14
        assert abs(delta_at(2.0j, table) - 1.0) < 1e-14

    def test_real_axis_rejected(self, half_table):
        """δ itself is evaluated off the real axis; the jump ratio needs ε > 0."""
        with pytest.raises(ValueError):
            delta_at(0.5, half_table)
        with pytest.raises(ValueError):
            delta_jump_ratio(0.5, 0.0, half_table)


class TestBlaschkeAndTrace:
    """Test cases for h(z) and the reconstruction of a(z)."""

    def test_blaschke_at_one(self):
        """h(1) = (1 - i)/(1 + i) = -i for a zero at i."""
        spectrum = DiscreteSpectrum(poles=[Pole(eta=1j, norming=2j)])
        assert abs(blaschke_h(1.0, spectrum) + 1j) < 1e-14
        with pytest.raises(ValueError):
            blaschke_h(-1j, spectrum)

    def test_kink_trace(self):
        """Reflectionless data reduce the trace formula to a = (z - i)/(z + i)."""
        data = reflectionless_data()
        for z in (1 + 1j, 2j, -1 + 2j):
            assert abs(trace_reconstruct_a(z, data.table, data.spectrum) - (z - 1j) / (z + 1j)) < 1e-12

    def test_trace_matches_direct(self, perturbed_kink, perturbed_data, jost_options):
        """Relative error below 1e-3 at 1 + i, 2i and -1 + 2i."""
        points = [1 + 1j, 2j, -1 + 2j]
        direct = a_coefficient(perturbed_kink, points, jost_options).unwrap()
        for z, a in zip(points, direct):
            reconstructed = trace_reconstruct_a(z, perturbed_data.table, perturbed_data.spectrum)
            assert abs(reconstructed - a) / abs(a) < 1e-3

    def test_lower_half_plane_rejected(self, half_table):
        """The trace formula is stated for Im z > 0."""
        with pytest.raises(ValueError):
            trace_reconstruct_a(1 - 1j, half_table, DiscreteSpectrum())

    def test_mass_from_spectrum(self, perturbed_data):
        """-2ΣIm ηₙ + ∫ν reproduces ∫(q² - 1) dx."""
        kink = reflectionless_data()
        assert mass_from_spectrum(kink.table, kink.spectrum) == pytest.approx(-2.0, abs=1e-14)
        estimate = mass_from_spectrum(perturbed_data.table, perturbed_data.spectrum)
        assert abs(estimate - perturbed_data.mass) / abs(perturbed_data.mass) < 1e-2


class TestPhaseAtOne:
    """Test cases for p = |r(1)| and φ₀."""

    def test_manufactured_phase(self, half_table):
        """Symmetric data: PV = 0 and φ₀ = arg conj(ip) = -π/2."""
        result = phi0_and_amp(half_table)
        assert isinstance(result, Success)
        phase = result.unwrap()
        assert phase.p == pytest.approx(0.5, abs=1e-14)
        assert abs(phase.pv_integral) < 1e-12
        assert phase.phi0 == pytest.approx(-math.pi / 2.0, abs=1e-12)
        assert not phase.generic
        assert not phase.clamped
        assert phase.phase(PhiVariant.BLASCHKE) == pytest.approx(phase.phi0)

    def test_blaschke_variant(self, half_table):
        """A zero at i shifts φ₀ by 2·arg h(1) = -π."""
        spectrum = DiscreteSpectrum(poles=[Pole(eta=1j, norming=2j)])
        phase = phi0_and_amp(half_table, spectrum).unwrap()
        assert phase.phi0_blaschke == pytest.approx(math.pi / 2.0, abs=1e-12)

    def test_reflectionless(self):
        """p = 0 gives φ₀ = 0 by convention."""
        data = reflectionless_data()
        phase = phi0_and_amp(data.table, data.spectrum).unwrap()
        assert phase.p == 0.0
        assert phase.phi0 == 0.0
        assert phase.phi0_blaschke == 0.0

    def test_generic_boundary(self):
        """p = 1 tables are generic and keep φ₀ = -π/2."""
        phase = phi0_and_amp(manufactured_table(1.0)).unwrap()
        assert phase.p == 1.0
        assert phase.generic
        assert phase.phi0 == pytest.approx(-math.pi / 2.0, abs=1e-3)

    def test_clamping(self):
        """|r(1)| within clamp_tol of 1 is clamped and flagged."""
        phase = phi0_and_amp(manufactured_table(1.0 - 1e-8)).unwrap()
        assert phase.clamped
        assert phase.p == 1.0
        assert phase.generic

    def test_refinement_history(self, perturbed_data):
        """The PV history of the computed data settles and the phase is principal."""
        phase = phi0_and_amp(perturbed_data.table, perturbed_data.spectrum).unwrap()
        assert len(phase.refinement_history) == 3
        assert abs(phase.refinement_history[1] - phase.pv_integral) <= CauchyOptions().pv_tol
        assert -math.pi < phase.phi0 <= math.pi
        assert -math.pi < phase.phi0_blaschke <= math.pi

    def test_refinement_stability(self):
        """φ₀ of an asymmetric table moves by less than 1e-3 when its cells are halved."""
        assert CauchyOptions().pv_tol <= math.pi * 1e-3
        grid = default_zgrid()
        mid = 0.5 * (grid[1:] + grid[:-1])
        fine = np.sort(np.concatenate([grid, mid[(np.abs(mid) > 0.05) & (np.abs(np.abs(mid) - 1.0) > 1e-3)]]))
        phases = []
        for g in (grid, fine):
            table = ReflectionTable.from_values(
                g,
                0.5j * np.exp(-((g - 2.0) ** 2)),
                r_at_one=0.5j * np.exp(-1.0),
                r_at_minus_one=0.5j * np.exp(-9.0),
                margin=float(np.min(np.abs(np.abs(g) - 1.0))),
            )
            result = phi0_and_amp(table)
            assert isinstance(result, Success)
            phases.append(result.unwrap().phi0)
        assert abs(phases[0] - phases[1]) < 1e-3

    def test_missing_limit(self):
        """A table without r(1) cannot produce a phase."""
        grid = np.array([-2.0, -0.5, 0.5, 2.0])
        table = ReflectionTable.from_values(grid, np.zeros(4, dtype=complex))
        result = phi0_and_amp(table)
        assert isinstance(result, Failure)
        error = result.failure()
        assert error.kind == ErrorKind.VALIDATION
        assert error.stage == Stage.PHASE

    def test_amplitude_above_one(self, half_table):
        """|r(1)| > 1 is a validation failure."""
        result = phi0_and_amp(half_table.model_copy(update={"r_at_one": 1.2j}))
        assert isinstance(result, Failure)
        assert result.failure().exit_code == 2
