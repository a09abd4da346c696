"""Fock-Krylov decay toolkit.

C++ core exposed through pybind11: densities of states built from resonance
poles, survival amplitudes computed by three independent routes, the
Wiener-Khinchin transform pair, Hamiltonian moments, and the critical-time
analysis of the decay regions.
"""

from _decaykit import (  # noqa: F401
    AutocorrCurve,
    DecayError,
    DensityOfStates,
    FormFactor,
    Pole,
    RegionModel,
    RegionReport,
    Resonance,
    Route,
    SampledSurvival,
    SurvivalCurve,
    amplitude_closed,
    amplitude_decomposed,
    amplitude_quadrature,
    autocorrelation,
    autocorrelation_lorentzian,
    build_dos,
    complex_power,
    constant_ff_residues_pair,
    critical_time_first_oscillation,
    critical_time_intersection,
    discrete_spectrum,
    eval_dos,
    ghirardi_critical_time,
    large_time_asymptote,
    lifetime_fleming,
    log_gamma,
    moment,
    moment_quadrature,
    negative_variance_interval,
    run_cli,
    sample_autocorrelation,
    sample_survival,
    survival_probability,
    table1,
    taylor_p,
    upper_incomplete_gamma,
    variance,
    wk_forward,
    wk_inverse,
)

__all__ = [name for name in dir() if not name.startswith("_")]
