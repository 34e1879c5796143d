"""
Tests for the direct scattering transform.
"""

import numpy as np
import pytest
from returns.result import Failure, Success

from mkdv_transition.core.problem_types import ErrorKind, Stage
from mkdv_transition.examples.profiles import manufactured_table
from mkdv_transition.models.scattering_models import InitialProfile, JostOptions, ZGridOptions
from mkdv_transition.models.simulation_models import SimConfig
from mkdv_transition.solvers.mkdv_sim import evolve
from mkdv_transition.solvers.scattering import (
    a_coefficient,
    default_zgrid,
    evolution_factor,
    evolve_scattering,
    jost_solutions,
    locate_arc_zeros,
    mass_from_a,
    picard_jost,
    reflection_grid,
    scattering_ab,
    scattering_data,
    validate_symmetries,
)


class TestKinkScattering:
    """The pure kink tanh(x) is reflectionless with a single zero of a at z = i."""

    def test_a_on_imaginary_axis(self, kink, jost_options):
        """a(z) = (z - i)/(z + i), so a(20i) = 19/21."""
        result = a_coefficient(kink, [20j, 3j], jost_options)
        assert isinstance(result, Success)
        a = result.unwrap()
        assert abs(a[0] - 19.0 / 21.0) < 1e-5
        assert abs(a[1] - 0.5) < 1e-5

    def test_reflectionless(self, kink_data):
        """|r| vanishes on the grid away from ±1 and at ±1 itself."""
        table = kink_data.table
        away = np.abs(np.abs(table.grid) - 1.0) > 0.05
        assert np.max(np.abs(table.r[away])) < 1e-6
        assert abs(table.r_at_one) < 1e-3
        assert not table.generic

    def test_single_pole(self, kink_data):
        """One self-conjugate zero at i with norming constant 2i and a′(i) = -i/2."""
        poles = kink_data.spectrum.poles
        assert len(poles) == 1
        pole = poles[0]
        assert abs(pole.eta - 1j) < 1e-6
        assert abs(pole.norming - 2j) < 1e-4
        assert abs(pole.a_prime - (-0.5j)) < 1e-4
        assert pole.self_conjugate
        assert abs(pole.velocity + 2.0) < 1e-6
        assert kink_data.spectrum.notes

    def test_mass(self, kink, kink_data):
        """∫(tanh² - 1) dx = -2, also recovered from the large-z expansion of a."""
        assert abs(kink_data.mass + 2.0) < 1e-6
        result = mass_from_a(kink, 200j, JostOptions(substeps=4))
        assert isinstance(result, Success)
        estimate = result.unwrap()
        assert abs(estimate.real + 2.0) / 2.0 < 0.01
        assert abs(estimate.real - (-400.0 / 201.0)) < 1e-3


class TestPerturbedKinkScattering:
    """tanh(x) + 0.3exp(-x²) on [-40, 40] with 4096 samples."""

    def test_unitarity(self, perturbed_kink, jost_options):
        """|a|² - |b|² = 1 on the real axis, relative to |a|²."""
        zs = np.concatenate([np.linspace(0.1, 0.9, 9), np.linspace(1.1, 3.0, 12)])
        for z in np.concatenate([zs, -zs]):
            result = scattering_ab(perturbed_kink, float(z), jost_options)
            assert isinstance(result, Success)
            sample = result.unwrap()
            assert sample.unitarity_defect / max(1.0, abs(sample.a) ** 2) < 1e-6
            assert abs(sample.r) <= 1.0 + 1e-12

    def test_symmetries(self, perturbed_data):
        """r(ζ) = conj r(-ζ) = -conj r(1/ζ) = -r(-1/ζ) on the default grid."""
        result = validate_symmetries(perturbed_data.table, tol=1e-6)
        assert isinstance(result, Success)
        report = result.unwrap()
        assert report.passed, report.deviations
        assert set(report.deviations) == {"reflection", "inversion", "composite"}

    def test_generic_limit(self, perturbed_data):
        """Step-like data of this family is generic: |r(±1)| = 1 and r(-1) = conj r(1)."""
        table = perturbed_data.table
        assert table.generic
        assert abs(abs(table.r_at_one) - 1.0) < 1e-3
        assert abs(table.r_at_minus_one - np.conj(table.r_at_one)) < 1e-3

    def test_limit_at_one(self, perturbed_kink, jost_options):
        """r(z) → -i as z → 1, so r(0.999) is already within 0.05 of -i."""
        sample = scattering_ab(perturbed_kink, 0.999, jost_options).unwrap()
        assert abs(sample.r + 1j) < 0.05

    def test_vanishes_at_origin(self, perturbed_kink, jost_options):
        """r(z) = -conj r(1/z) decays like r at infinity: |r(0.01)| < 1e-3."""
        sample = scattering_ab(perturbed_kink, 0.01, jost_options).unwrap()
        assert abs(sample.r) < 1e-3

    @pytest.mark.parametrize("z", [0.5, 2.0, -3.0, 0.9])
    def test_match_point_independence(self, perturbed_kink, z):
        """The Wronskians do not depend on where the two sweeps meet."""
        centre = scattering_ab(perturbed_kink, z, JostOptions(match_point=0.0)).unwrap()
        shifted = scattering_ab(perturbed_kink, z, JostOptions(match_point=3.0)).unwrap()
        assert abs(centre.a - shifted.a) < 1e-8
        assert abs(centre.b - shifted.b) < 1e-8

    def test_log_density(self, perturbed_data):
        """log(1 - |r|²) is stored as -2 log|a|, finite and non-positive."""
        table = perturbed_data.table
        assert np.all(np.isfinite(table.log1m_r2))
        assert np.all(table.log1m_r2 <= 1e-9)
        away = np.abs(np.abs(table.grid) - 1.0) > 0.05
        direct = np.log1p(-np.abs(table.r[away]) ** 2)
        assert np.max(np.abs(direct - table.log1m_r2[away])) < 1e-6

    def test_zeros_on_unit_circle(self, perturbed_data):
        """Every zero lies on the upper unit semicircle with its soliton velocity."""
        assert len(perturbed_data.spectrum) >= 1
        for pole in perturbed_data.spectrum.poles:
            assert abs(abs(pole.eta) - 1.0) < 1e-8
            assert pole.eta.imag > 0
            assert -6.0 <= pole.velocity <= -2.0

    def test_mass_matches_profile(self, perturbed_kink, perturbed_data):
        """The large-z expansion of a reproduces ∫(q² - 1) dx within 1%."""
        result = mass_from_a(perturbed_kink, 200j, JostOptions(substeps=4))
        assert isinstance(result, Success)
        assert abs(result.unwrap().real - perturbed_data.mass) / abs(perturbed_data.mass) < 0.01


class TestJostSolutions:
    """Test cases for the Jost sweeps and the Volterra cross-check."""

    def test_determinant(self, perturbed_kink, jost_options):
        """det μ± = 1 - z⁻² along the grid."""
        result = jost_solutions(perturbed_kink, 2.0, jost_options)
        assert isinstance(result, Success)
        pair = result.unwrap()
        assert not pair.analytic_only
        assert pair.determinant_defect() < 1e-6

    def test_analytic_columns_only_off_axis(self, perturbed_kink):
        """Off the real axis only the analytic columns are propagated."""
        pair = jost_solutions(perturbed_kink, 0.5 + 0.5j).unwrap()
        assert pair.analytic_only
        assert np.all(np.isfinite(pair.mu_plus[:, :, 0]))
        assert np.all(np.isnan(pair.mu_plus[:, :, 1]))

    @pytest.mark.parametrize("z", [2.0, 0.6, 1.0])
    def test_picard_agrees_with_magnus(self, perturbed_kink, jost_options, z):
        """Picard iteration of the Volterra equation reproduces μ₊ on x ≥ 1."""
        picard = picard_jost(perturbed_kink, z, x_cut=1.0)
        assert isinstance(picard, Success)
        x, mu = picard.unwrap()
        pair = jost_solutions(perturbed_kink, z, jost_options).unwrap()
        mask = perturbed_kink.x >= 1.0
        assert np.allclose(perturbed_kink.x[mask], x)
        assert np.max(np.abs(pair.mu_plus[mask] - mu)) < 1e-6

    def test_zero_is_excluded(self, perturbed_kink):
        """z = 0 is a validation failure."""
        result = jost_solutions(perturbed_kink, 0.0)
        assert isinstance(result, Failure)
        assert result.failure().kind == ErrorKind.VALIDATION


class TestInputValidation:
    """Test cases for rejected inputs."""

    def test_untruncated_profile(self):
        """tanh on [-5, 5] misses ±1 by far more than the truncation tolerance."""
        short = InitialProfile.from_function(np.tanh, -5.0, 5.0, 512)
        result = scattering_data(short)
        assert isinstance(result, Failure)
        error = result.failure()
        assert error.kind == ErrorKind.VALIDATION
        assert error.stage == Stage.SCATTER
        assert error.exit_code == 2

    def test_grid_touching_one(self, kink):
        """A z grid containing 1 is rejected with the offending margin."""
        result = reflection_grid(kink, np.array([0.5, 1.0, 2.0]))
        assert isinstance(result, Failure)
        error = result.failure()
        assert error.kind == ErrorKind.VALIDATION
        assert error.details["margin"] == 0.0
        assert "margin" in error.message

    def test_unsorted_grid(self, kink):
        """The grid must increase strictly."""
        result = reflection_grid(kink, np.array([0.5, 2.0, 1.5]))
        assert isinstance(result, Failure)

    def test_lower_half_plane(self, kink):
        """a is only continued into the upper half plane."""
        result = a_coefficient(kink, [1.0 - 1.0j])
        assert isinstance(result, Failure)
        assert result.failure().kind == ErrorKind.VALIDATION

    def test_singular_real_point(self, kink):
        """a and b are not sampled at ±1."""
        result = scattering_ab(kink, -1.0)
        assert isinstance(result, Failure)

    def test_profile_model(self):
        """Non-uniform or decreasing grids are rejected by the profile model."""
        x = np.linspace(-40.0, 40.0, 64)
        with pytest.raises(ValueError):
            InitialProfile(x=x[::-1], q=np.tanh(x))
        bent = x.copy()
        bent[10] += 0.1
        with pytest.raises(ValueError):
            InitialProfile(x=bent, q=np.tanh(bent))


class TestGridAndSymmetries:
    """Test cases for the default grid and the symmetry report."""

    def test_default_grid_is_closed(self):
        """The default grid is closed under ζ → -ζ and ζ → 1/ζ and avoids ±1."""
        grid = default_zgrid()
        assert np.all(np.diff(grid) > 0)
        for image in (-grid, 1.0 / grid):
            nearest = grid[np.argmin(np.abs(grid[None, :] - image[:, None]), axis=1)]
            assert np.max(np.abs(nearest - image) / np.abs(image)) < 1e-9
        assert np.min(np.abs(np.abs(grid) - 1.0)) > 0.5e-4
        assert np.max(np.abs(grid)) == pytest.approx(40.0)

    def test_custom_grid_options(self):
        """A coarser uniform step gives fewer nodes."""
        fine = default_zgrid()
        coarse = default_zgrid(ZGridOptions(step=0.1))
        assert coarse.size < fine.size

    def test_manufactured_table_passes(self):
        """The manufactured table satisfies all three relations exactly."""
        report = validate_symmetries(manufactured_table(0.7)).unwrap()
        assert report.passed
        assert max(report.deviations.values()) < 1e-12

    def test_corrupted_entry_is_flagged(self):
        """One perturbed r value is reported by every relation, together with its partner."""
        table = manufactured_table(0.7)
        k = int(np.argmin(np.abs(table.grid - 2.0)))
        r = table.r.copy()
        r[k] += 0.05
        report = validate_symmetries(table.model_copy(update={"r": r})).unwrap()
        assert not report.passed
        for name in ("reflection", "inversion", "composite"):
            assert report.deviations[name] == pytest.approx(0.05, abs=1e-8)
            assert table.grid[k] in report.flagged[name]
            assert len(report.flagged[name]) == 2

    def test_open_grid_is_rejected(self):
        """A grid without partners cannot be checked."""
        table = manufactured_table(0.5, np.array([0.3, 0.6, 1.7, 2.5]))
        result = validate_symmetries(table)
        assert isinstance(result, Failure)
        assert result.failure().kind == ErrorKind.VALIDATION


class TestTimeEvolution:
    """Test cases for the linear evolution of scattering data."""

    def test_unimodular_on_real_axis(self):
        """exp(2iλ(4k² + 2)t) has modulus 1 for real z."""
        grid = default_zgrid()
        factor = evolution_factor(grid, 3.7)
        assert np.max(np.abs(np.abs(factor) - 1.0)) < 1e-12

    def test_evolution_composes(self, perturbed_data):
        """Evolving by 1 and then 2 equals evolving by 3; |r| and ηₙ are unchanged."""
        once = evolve_scattering(evolve_scattering(perturbed_data, 1.0), 2.0)
        direct = evolve_scattering(perturbed_data, 3.0)
        assert once.time == pytest.approx(3.0)
        assert np.max(np.abs(once.table.r - direct.table.r)) < 1e-9
        assert np.allclose(np.abs(direct.table.r), np.abs(perturbed_data.table.r))
        assert np.allclose(direct.spectrum.etas, perturbed_data.spectrum.etas)

    def test_kink_norming_constant_is_real_growth(self, kink_data):
        """At η = i the factor is exp(2iλ(4k² + 2)t) with λ = i, k = 0, i.e. e^{-4t}."""
        evolved = evolve_scattering(kink_data, 0.5)
        pole = evolved.spectrum.poles[0]
        assert abs(pole.norming - kink_data.spectrum.poles[0].norming * np.exp(-2.0)) < 1e-6

    def test_phase_increment(self):
        """At z = 2, t = 1: λ = 0.75, k = 1.25 and the phase advances by 2·0.75·8.25 = 12.375."""
        factor = evolution_factor(2.0, 1.0)
        assert abs(factor) == pytest.approx(1.0, abs=1e-14)
        assert np.angle(factor) == pytest.approx(12.375 - 4.0 * np.pi, abs=1e-12)

    def test_zero_time_is_identity(self, perturbed_data):
        """t = 0 leaves r and the norming constants untouched."""
        same = evolve_scattering(perturbed_data, 0.0)
        assert same.time == perturbed_data.time
        assert np.array_equal(same.table.r, perturbed_data.table.r)
        assert np.array_equal(same.spectrum.norming_constants, perturbed_data.spectrum.norming_constants)

    def test_non_finite_time(self, kink_data):
        """Infinite time is rejected."""
        with pytest.raises(ValueError):
            evolve_scattering(kink_data, float("inf"))

    def test_negative_time(self, kink_data):
        """Scattering data is only advanced forward in time."""
        with pytest.raises(ValueError, match="non-negative"):
            evolve_scattering(kink_data, -1.0)


class TestArcZeros:
    """Test cases for the zero search on the upper unit semicircle."""

    def test_manufactured_zero(self):
        """a(z) = (z - η)/(z - conj η) with η = e^{iπ/3} has its only zero at angle π/3."""
        eta = np.exp(1j * np.pi / 3.0)
        roots = locate_arc_zeros(lambda z: (z - eta) / (z - np.conj(eta)))
        assert len(roots) == 1
        assert abs(roots[0] - np.pi / 3.0) < 1e-8

    def test_no_zero(self):
        """A function without zeros on the arc yields none."""
        assert locate_arc_zeros(lambda z: z + 3.0) == []


@pytest.mark.slow
class TestIsospectrality:
    """a(z) is invariant under the mKdV flow."""

    def test_a_is_time_independent(self, perturbed_kink):
        """|a(z, 1) - a(z, 0)| < 1e-3 at five points of the upper half plane; mass drift < 1e-6."""
        result = evolve(perturbed_kink, SimConfig(final_time=1.0), [0.0, 1.0])
        assert isinstance(result, Success)
        history = result.unwrap()
        assert history.mass_drift < 1e-6

        options = JostOptions(substeps=2, truncation_tol=1e-6)
        points = [0.5 + 0.5j, 2.0j, 1.5 + 0.3j, -0.8 + 0.9j, 3.0 + 1.0j]
        values = []
        for t in (0.0, 1.0):
            state = history.at(t)
            profile = InitialProfile(x=state.x, q=state.q(), label=f"t={t:g}")
            a = a_coefficient(profile, points, options)
            assert isinstance(a, Success)
            values.append(a.unwrap())
        assert np.max(np.abs(values[1] - values[0])) < 1e-3
