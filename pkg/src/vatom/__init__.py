"""Coherence dynamics of a V-type three-level atom in a lossy cavity.

Closed-form propagators for the memory-kernel amplitude equations, the
reduced density matrix and its l1 coherence, a weak-measurement /
measurement-reversal protocol, independent Volterra integrators that
validate the closed forms, and a scenario layer for curves, event
detection, sweeps and figure reproduction.
"""

from .coherence import (
    check_density_matrix,
    density_from_amplitudes,
    l1_coherence,
    min_eigenvalue,
)
from .dynamics import (
    AmplitudeVector,
    PropagatorPair,
    SystemParams,
    apply_propagator,
    complex_rate,
    evolve_amplitudes,
    memory_kernel,
    propagator,
    propagator_limit,
)
from .measurement import (
    MeasurementStrengths,
    apply_reversal,
    apply_weak_measurement,
    normalization_factor,
    protocol_state,
    protocol_steady_state,
    reversal_operator,
    weak_operator,
)
from .oracle import (
    METHOD_RK4,
    METHOD_TRAPEZOID,
    AmplitudeSeries,
    OracleComparison,
    OracleConfig,
    compare_closed_form,
    oracle_integrate,
    verification_cases,
)
from .scenarios import (
    FIGURES,
    Birth,
    EventReport,
    FigureCurve,
    FigureSpec,
    INITIAL_STATES,
    Scenario,
    ScenarioResult,
    SweepRow,
    detect_events,
    parse_scenario_file,
    parse_sweep_file,
    reproduce_figure,
    run_scenario,
    strong_params,
    sweep,
    time_to_half,
    weak_params,
    write_series_csv,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeSeries",
    "AmplitudeVector",
    "Birth",
    "EventReport",
    "FIGURES",
    "FigureCurve",
    "FigureSpec",
    "INITIAL_STATES",
    "METHOD_RK4",
    "METHOD_TRAPEZOID",
    "MeasurementStrengths",
    "OracleComparison",
    "OracleConfig",
    "PropagatorPair",
    "Scenario",
    "ScenarioResult",
    "SweepRow",
    "SystemParams",
    "apply_propagator",
    "apply_reversal",
    "apply_weak_measurement",
    "check_density_matrix",
    "compare_closed_form",
    "complex_rate",
    "density_from_amplitudes",
    "detect_events",
    "evolve_amplitudes",
    "l1_coherence",
    "memory_kernel",
    "min_eigenvalue",
    "normalization_factor",
    "oracle_integrate",
    "parse_scenario_file",
    "parse_sweep_file",
    "propagator",
    "propagator_limit",
    "protocol_state",
    "protocol_steady_state",
    "reproduce_figure",
    "reversal_operator",
    "run_scenario",
    "strong_params",
    "sweep",
    "time_to_half",
    "verification_cases",
    "weak_operator",
    "weak_params",
    "write_series_csv",
    "write_sweep_csv",
]
