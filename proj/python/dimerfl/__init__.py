"""Simulator for two interacting, coherently driven two-level emitters:
exact Lindblad steady states, closed-form effective models, resonance
fluorescence spectra and Fisher-information analysis of inter-emitter
distance estimation."""

from dimerfl._core import (  # noqa: F401
    AxisSpec,
    Basis,
    ConfigError,
    CouplingMode,
    DensityMatrix,
    DressedLadder,
    EffectiveRates,
    EffectiveSteadyState,
    EmissionObservables,
    FisherOptions,
    FisherReport,
    GridInfo,
    Model1pState,
    Model2pPopulations,
    NumericalError,
    Peak,
    SpectralSeries,
    StrongDrivingEigensystem,
    SweepAxis,
    SystemParams,
    Transition,
    VisibilityCrossover,
    build_hamiltonian,
    build_liouvillian,
    combined_steady,
    coupling_from_distance,
    detect_peaks,
    dressed_ladder,
    effective_rates,
    emission_observables,
    fisher_information,
    fisher_map,
    g2_zero,
    g2_zero_operator,
    intensity_effective,
    intensity_exact,
    linear_grid,
    mixing_angle,
    model1p_steady,
    model2p_steady,
    params_from_beta,
    poisson_count_prob,
    rf_spectrum,
    spectral_function,
    spectrum_sensitivity,
    steady_state,
    strong_driving_eigensystem,
    to_bare_basis,
    to_collective_basis,
    two_photon_rabi,
    visibility_crossover,
)

__version__ = "1.0.0"
