"""Fuzzy reliability analysis of a repairable warm-standby system.

Crisp layer: a six-state Markov chain of two active-parallel units plus
one warm standby under imperfect failure coverage, giving MTTF, steady
availability, transient reliability and Laplace-domain identities.

Fuzzy layer: rates given as fuzzy numbers propagate through the crisp
characteristics by interval optimization over alpha-cut boxes, producing
membership curves, decision tables, inverse queries and coverage
calibration, with Monte Carlo simulators as independent cross-checks.
"""

from .errors import (
    CalibrationError,
    ConfigError,
    FuzzrelError,
    KernelEvaluationError,
    NestingError,
    NoContainmentError,
    SolverError,
    UnknownParameterError,
    ValidationError,
)
from .fuzzy import (
    FuzzyNumber,
    Interval,
    MembershipCurve,
    alpha_cut,
    crisp,
    membership_at,
)
from .markov import (
    ChainMode,
    GeneratorMatrix,
    LaplaceStateVector,
    State,
    StateProbabilities,
    SystemParams,
    UP_STATES,
    DOWN_STATES,
    build_generator,
    failure_density_laplace,
    laplace_state_probs,
    mttf,
    reliability_at,
    state_probabilities,
    stationary_distribution,
    steady_availability,
)
from .bounds import (
    MTBF,
    STEADY_AVAILABILITY,
    BoundsMethod,
    BoundsResult,
    FuzzySystemParams,
    Metric,
    PARAMETER_NAMES,
    bounds_at_levels,
    brute_force_bounds,
    characteristic_bounds,
    evaluate_metric,
    membership_curve,
    reliability_at_time,
)
from .decision import (
    AlphaCutTable,
    CalibrationResult,
    DecisionQuery,
    TableRow,
    build_table,
    calibrate_coverage,
    invert_query,
    required_parameter_range,
)
from .simulate import SimConfig, SimEstimate, simulate_availability, simulate_mttf

__version__ = "1.0.0"

__all__ = [
    "AlphaCutTable",
    "BoundsMethod",
    "BoundsResult",
    "CalibrationError",
    "CalibrationResult",
    "ChainMode",
    "ConfigError",
    "DOWN_STATES",
    "DecisionQuery",
    "FuzzrelError",
    "FuzzyNumber",
    "FuzzySystemParams",
    "GeneratorMatrix",
    "Interval",
    "KernelEvaluationError",
    "LaplaceStateVector",
    "MTBF",
    "MembershipCurve",
    "Metric",
    "NestingError",
    "NoContainmentError",
    "PARAMETER_NAMES",
    "STEADY_AVAILABILITY",
    "SimConfig",
    "SimEstimate",
    "SolverError",
    "State",
    "StateProbabilities",
    "SystemParams",
    "TableRow",
    "UP_STATES",
    "UnknownParameterError",
    "ValidationError",
    "alpha_cut",
    "bounds_at_levels",
    "build_generator",
    "build_table",
    "brute_force_bounds",
    "calibrate_coverage",
    "characteristic_bounds",
    "crisp",
    "evaluate_metric",
    "failure_density_laplace",
    "invert_query",
    "laplace_state_probs",
    "membership_at",
    "membership_curve",
    "mttf",
    "reliability_at",
    "reliability_at_time",
    "required_parameter_range",
    "simulate_availability",
    "simulate_mttf",
    "state_probabilities",
    "stationary_distribution",
    "steady_availability",
]
