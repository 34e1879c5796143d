"""
Numerical operations: spectral plane, scattering transform, δ and φ₀, Painlevé II, transition asymptotics
and the reference simulator.
"""

from .cauchy_delta import (
    blaschke_h,
    cauchy_log_integral,
    delta_at,
    delta_jump_ratio,
    mass_from_spectrum,
    nu_of,
    phi0_and_amp,
    trace_reconstruct_a,
)
from .mkdv_sim import conserved_mass, evolve, kink_reference, pde_residual, spectral_sample
from .painleve2 import airy_ai, airy_tail_integral, ode_residual, pii_interpolate, pii_m1, solve_pii
from .scattering import (
    a_coefficient,
    default_zgrid,
    discrete_spectrum,
    evolution_factor,
    evolve_scattering,
    jost_solutions,
    locate_arc_zeros,
    mass_from_a,
    picard_jost,
    reflection_at_one,
    reflection_grid,
    scattering_ab,
    scattering_data,
    validate_symmetries,
)
from .spectral_plane import (
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
from .transition_asymptotics import (
    ERROR_EXPONENT,
    first_order_matrices,
    q_transition,
    reconstruct_from_matrices,
    s_of,
    transition_sweep,
    x_of,
)

__all__ = [
    # Spectral plane
    "classify_region",
    "critical_circle_points",
    "critical_line_radii",
    "re_2i_theta",
    "re_2i_theta_polar",
    "saddle_points",
    "signature_at",
    "signature_grid",
    "soliton_velocity",
    "theta",
    "theta_prime",
    "uniformize",
    # Scattering
    "a_coefficient",
    "default_zgrid",
    "discrete_spectrum",
    "evolution_factor",
    "evolve_scattering",
    "jost_solutions",
    "locate_arc_zeros",
    "mass_from_a",
    "picard_jost",
    "reflection_at_one",
    "reflection_grid",
    "scattering_ab",
    "scattering_data",
    "validate_symmetries",
    # δ and phase
    "blaschke_h",
    "cauchy_log_integral",
    "delta_at",
    "delta_jump_ratio",
    "mass_from_spectrum",
    "nu_of",
    "phi0_and_amp",
    "trace_reconstruct_a",
    # Painlevé II
    "airy_ai",
    "airy_tail_integral",
    "ode_residual",
    "pii_interpolate",
    "pii_m1",
    "solve_pii",
    # Transition region
    "ERROR_EXPONENT",
    "first_order_matrices",
    "q_transition",
    "reconstruct_from_matrices",
    "s_of",
    "transition_sweep",
    "x_of",
    # Simulation
    "conserved_mass",
    "evolve",
    "kink_reference",
    "pde_residual",
    "spectral_sample",
]
