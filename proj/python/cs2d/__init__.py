"""Coherent states of the 2D isotropic harmonic oscillator.

Expansion in the joint (H, l_z) eigenbasis, closed-form moments, and time
evolution by closed form and by spectral synthesis.
"""

from ._core import (
    Chirality,
    CoefficientTable,
    DomainError,
    ModeIndex,
    PacketParams,
    auto_nmax,
    binomial,
    build_table,
    classical_center,
    cli,
    closed_form_energy,
    closed_form_lz,
    coeff_circular,
    coeff_elliptic,
    coeff_quadrature,
    coherent_2d,
    compute_report,
    eigenstate,
    energy,
    evolve_closed_form,
    evolve_spectral,
    gauss_laguerre,
    initial_state,
    laguerre,
    log_factorial,
    modes_in_shell,
    poisson_principal,
    principal_distribution,
    run_verification,
    trace_orbit,
    verify_laguerre_integral,
)

__version__ = "0.1.0"
