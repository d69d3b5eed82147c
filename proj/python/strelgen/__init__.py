"""Colored spatio-temporal logic monitoring and latent-space guidance."""

from ._core import (  # noqa: F401
    Aggregation,
    Agent,
    AgentState,
    ContextAgent,
    ContextScene,
    Domain,
    ExperimentSummary,
    Formula,
    GeneratorConfig,
    GraphConfig,
    GuidanceParams,
    GuidanceResult,
    Metric,
    MetricsReport,
    RobustnessValue,
    StrelgenError,
    Trace,
    compute_metrics,
    context_from_json,
    context_of,
    decode,
    derive_seed,
    expand_derived,
    format,
    load_context,
    load_formula,
    monitor,
    monitor_oracle,
    objective,
    optimize,
    parse,
    run_experiment,
    sample_latent,
    smooth_robustness,
    structurally_equal,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
