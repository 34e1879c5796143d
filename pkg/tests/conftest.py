"""
Shared fixtures: the kink family, its scattering data and Painlevé II solutions.
"""

import pytest
from returns.result import Success

from mkdv_transition.examples.profiles import kink_profile, manufactured_table, perturbed_kink_profile
from mkdv_transition.models.painleve_models import PIIConfig
from mkdv_transition.models.scattering_models import JostOptions
from mkdv_transition.solvers.painleve2 import solve_pii
from mkdv_transition.solvers.scattering import scattering_data


@pytest.fixture(scope="session")
def kink():
    return kink_profile()


@pytest.fixture(scope="session")
def perturbed_kink():
    return perturbed_kink_profile(0.3)


@pytest.fixture(scope="session")
def jost_options():
    return JostOptions(substeps=2)


@pytest.fixture(scope="session")
def kink_data(kink, jost_options):
    result = scattering_data(kink, options=jost_options)
    assert isinstance(result, Success), result
    return result.unwrap()


@pytest.fixture(scope="session")
def perturbed_data(perturbed_kink, jost_options):
    result = scattering_data(perturbed_kink, options=jost_options)
    assert isinstance(result, Success), result
    return result.unwrap()


@pytest.fixture(scope="session")
def half_table():
    return manufactured_table(0.5)


@pytest.fixture(scope="session")
def pii_solutions():
    """Ablowitz–Segur solutions for a few amplitudes below 1, integrated down to s = -6."""
    solutions = {}
    for p in (0.2, 0.5, 0.9):
        result = solve_pii(PIIConfig(p=p, s_min=-6.0))
        assert isinstance(result, Success), result
        solutions[p] = result.unwrap()
    return solutions
