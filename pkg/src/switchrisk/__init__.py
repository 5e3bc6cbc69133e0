"""Effect-measure algebra, risk transport, and switch-mechanism analysis
for binary outcomes."""

from .errors import (
    DependencePresent,
    Infeasible,
    InfeasibleDependence,
    IncoherentMechanism,
    InvalidPrediction,
    NotMonotone,
    ParseError,
    SwitchRiskError,
    UndefinedMeasure,
    UnknownModifier,
    ValidationError,
    WeightError,
)
from .ingest import TrialRecord, ingest
from .measures import (
    DEFAULT_GRID,
    RISK_TOL,
    ClosureResult,
    EffectMeasure,
    EffectMeasureKind,
    RiskPair,
    StratumRow,
    apply_effect,
    closure_check,
    compute_measure,
    convert_measure,
    pool_strata,
    prediction_equivalent,
    raw_effect,
    recode_outcome,
    validate_risk,
)
from .orcheck import (
    CollapsibilityReport,
    CollapsibilityWitness,
    TwoSettingScenario,
    collapsibility_audit,
    counterexample_search,
    or_residual,
    pooled_pair,
)
from .scc import (
    EffectBounds,
    FalsificationResult,
    IndividualSample,
    MechanismSpec,
    Representation,
    SensitivityPoint,
    SimulationResult,
    StabilityReport,
    StabilityRow,
    SwitchDependence,
    SwitchKind,
    analytic_risks,
    bounds_nonmonotone,
    coherence_check,
    correlation_sensitivity,
    falsification_check,
    simulate,
    stability_table,
    stable_measure_value,
)
from .scenario import (
    BoundsSettings,
    OutputSettings,
    ScenarioConfig,
    SimulationSettings,
    load_scenario,
)
from .transport import (
    DivergenceReport,
    DivergenceRow,
    ModifierTable,
    PredictionRequest,
    divergence_report,
    predict_risk,
    rare_disease_gap,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsSettings",
    "ClosureResult",
    "CollapsibilityReport",
    "CollapsibilityWitness",
    "DEFAULT_GRID",
    "DependencePresent",
    "DivergenceReport",
    "DivergenceRow",
    "EffectBounds",
    "EffectMeasure",
    "EffectMeasureKind",
    "FalsificationResult",
    "IncoherentMechanism",
    "IndividualSample",
    "Infeasible",
    "InfeasibleDependence",
    "InvalidPrediction",
    "MechanismSpec",
    "ModifierTable",
    "NotMonotone",
    "OutputSettings",
    "ParseError",
    "PredictionRequest",
    "RISK_TOL",
    "Representation",
    "RiskPair",
    "ScenarioConfig",
    "SensitivityPoint",
    "SimulationResult",
    "SimulationSettings",
    "StabilityReport",
    "StabilityRow",
    "StratumRow",
    "SwitchDependence",
    "SwitchKind",
    "SwitchRiskError",
    "TrialRecord",
    "TwoSettingScenario",
    "UndefinedMeasure",
    "UnknownModifier",
    "ValidationError",
    "WeightError",
    "analytic_risks",
    "apply_effect",
    "bounds_nonmonotone",
    "closure_check",
    "coherence_check",
    "collapsibility_audit",
    "compute_measure",
    "convert_measure",
    "correlation_sensitivity",
    "counterexample_search",
    "divergence_report",
    "falsification_check",
    "ingest",
    "load_scenario",
    "or_residual",
    "pool_strata",
    "pooled_pair",
    "predict_risk",
    "prediction_equivalent",
    "rare_disease_gap",
    "raw_effect",
    "recode_outcome",
    "simulate",
    "stability_table",
    "stable_measure_value",
    "validate_risk",
]
