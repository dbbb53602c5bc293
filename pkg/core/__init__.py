"""Módulo core do PyBound."""
from .errors import (
    PyBoundError,
    ConfigParseError,
    ScenarioValidationError,
    NumericalError,
    QuadratureError,
    RootBracketError,
    StepSizeError,
    KernelError,
    SurfacePlasmonPole,
    GaplessError,
    NonUnitaryError,
    DimensionError
)
from .spectra import (
    SpectralKind,
    SpectralDensity,
    OhmicFamily,
    Plasmonic,
    DiscreteModes,
    BoundState,
    evaluate_J,
    kernel_f,
    level_shift,
    bound_state_solve,
    spp_dispersion,
    drude_permittivity,
    discretize
)
from .dynamics import (
    AmplitudeTrajectory,
    RateFunctions,
    AsymptoticRates,
    EffectiveTemperature,
    StateSeries,
    StateSpec,
    QubitState,
    BellState,
    GHZState,
    OscillatorState,
    solve_u,
    markovian_u,
    discrete_bath_u,
    decompose_u,
    rates_from_u,
    asymptotic_rates,
    bose,
    thermal_kernel,
    solve_thermal,
    effective_temperature,
    steady_state_distribution,
    ghz_state,
    propagate
)
from .metrics import (
    QSLResult,
    PrecisionCurve,
    concurrence,
    trace_distance,
    fidelity,
    non_markovianity,
    qsl_time,
    snl_limit,
    zeno_limit,
    heisenberg_limit,
    mzi_ideal_minimum,
    mzi_markovian_curve,
    mzi_markovian_minimum,
    mzi_bound_state_limit,
    ramsey_markovian_limit,
    ramsey_bound_state_limit,
    mzi_precision,
    ramsey_precision,
    minimize_precision
)
from .floquet import (
    PiecewiseModel,
    FloquetSpectrum,
    StroboscopicSeries,
    AsymptoticProjection,
    build_spinchain,
    build_battery,
    one_period_propagator,
    fold_quasienergy,
    quasienergy_spectrum,
    detect_fbs,
    analyze,
    stroboscopic_evolve,
    asymptotic_projection
)
from .topology import (
    ModelKind,
    KitaevParams,
    HaldanePiece,
    HaldaneParams,
    NHSSHParams,
    DrivenTwoBandModel,
    TwoBandFloquet,
    GapClosing,
    EdgeFlow,
    FloquetWinding,
    OpenSpectrum,
    kitaev_model,
    two_band_floquet,
    gap_closing_locus,
    find_gap_closings,
    minimal_gap,
    chern_number,
    haldane_ribbon_edge_flow,
    kitaev_invariants,
    gbz_map,
    nhssh_static_winding,
    nhssh_invariants,
    open_spectrum,
    bloch_quasienergies
)
from .scenario import (
    VERSION,
    Scenario,
    build_scenario,
    read_config,
    save_scenario,
    load_scenario
)
from .export import (
    export_table_csv,
    export_columns_csv,
    export_summary_json
)
from .sweep import (
    SweepAxis,
    SweepPoint,
    SweepResult,
    SweepEngine
)

__version__ = VERSION

__all__ = [
    # Errors
    "PyBoundError",
    "ConfigParseError",
    "ScenarioValidationError",
    "NumericalError",
    "QuadratureError",
    "RootBracketError",
    "StepSizeError",
    "KernelError",
    "SurfacePlasmonPole",
    "GaplessError",
    "NonUnitaryError",
    "DimensionError",
    # Spectra
    "SpectralKind",
    "SpectralDensity",
    "OhmicFamily",
    "Plasmonic",
    "DiscreteModes",
    "BoundState",
    "evaluate_J",
    "kernel_f",
    "level_shift",
    "bound_state_solve",
    "spp_dispersion",
    "drude_permittivity",
    "discretize",
    # Dynamics
    "AmplitudeTrajectory",
    "RateFunctions",
    "AsymptoticRates",
    "EffectiveTemperature",
    "StateSeries",
    "StateSpec",
    "QubitState",
    "BellState",
    "GHZState",
    "OscillatorState",
    "solve_u",
    "markovian_u",
    "discrete_bath_u",
    "decompose_u",
    "rates_from_u",
    "asymptotic_rates",
    "bose",
    "thermal_kernel",
    "solve_thermal",
    "effective_temperature",
    "steady_state_distribution",
    "ghz_state",
    "propagate",
    # Metrics
    "QSLResult",
    "PrecisionCurve",
    "concurrence",
    "trace_distance",
    "fidelity",
    "non_markovianity",
    "qsl_time",
    "snl_limit",
    "zeno_limit",
    "heisenberg_limit",
    "mzi_ideal_minimum",
    "mzi_markovian_curve",
    "mzi_markovian_minimum",
    "mzi_bound_state_limit",
    "ramsey_markovian_limit",
    "ramsey_bound_state_limit",
    "mzi_precision",
    "ramsey_precision",
    "minimize_precision",
    # Floquet
    "PiecewiseModel",
    "FloquetSpectrum",
    "StroboscopicSeries",
    "AsymptoticProjection",
    "build_spinchain",
    "build_battery",
    "one_period_propagator",
    "fold_quasienergy",
    "quasienergy_spectrum",
    "detect_fbs",
    "analyze",
    "stroboscopic_evolve",
    "asymptotic_projection",
    # Topology
    "ModelKind",
    "KitaevParams",
    "HaldanePiece",
    "HaldaneParams",
    "NHSSHParams",
    "DrivenTwoBandModel",
    "TwoBandFloquet",
    "GapClosing",
    "EdgeFlow",
    "FloquetWinding",
    "OpenSpectrum",
    "kitaev_model",
    "two_band_floquet",
    "gap_closing_locus",
    "find_gap_closings",
    "minimal_gap",
    "chern_number",
    "haldane_ribbon_edge_flow",
    "kitaev_invariants",
    "gbz_map",
    "nhssh_static_winding",
    "nhssh_invariants",
    "open_spectrum",
    "bloch_quasienergies",
    # Scenario / Export / Sweep
    "VERSION",
    "Scenario",
    "build_scenario",
    "read_config",
    "save_scenario",
    "load_scenario",
    "export_table_csv",
    "export_columns_csv",
    "export_summary_json",
    "SweepAxis",
    "SweepPoint",
    "SweepResult",
    "SweepEngine"
]
