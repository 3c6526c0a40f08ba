"""Decision-analytics workbench library.

Learns stochastic models (discrete Markov chains, linear-Gaussian
processes) from historical index data, measures correlation structure
among indices, solves Markov decision processes by value iteration, and
models decision templates with Bézier relation-line geometry.  Exposed as
this library plus a CLI (``decisionlab``) and an HTTP/JSON service.
"""

from .bezier import (
    FLATTEN_TOLERANCE,
    CubicBezier,
    HitResult,
    evaluate,
    flatten,
    hit_test,
    line_as_bezier,
    split,
)
from .correlation import (
    CorrelationReport,
    PairedSample,
    compute_report,
    correlation_ratio,
    format_report,
    kendall_tau,
    partial_correlation,
    pearson,
    spearman,
    total_correlation,
)
from .errors import DecisionLabError
from .leveling import (
    LevelingScheme,
    assign_level,
    label_history,
    label_values,
    membership_vector,
    synthesize,
)
from .lineargaussian import (
    SIGMA_FLOOR,
    GaussianBelief,
    LinearGaussianModel,
    fit_mle,
    log_likelihood,
    predict_horizon,
    predict_one,
)
from .markov import learn_transition_matrix, predict_distribution
from .mdp import (
    MdpModel,
    bellman_update,
    evaluate_policy,
    extract_policy,
    value_iteration,
)
from .store import (
    ConversionRule,
    HistoryStore,
    IndexDef,
    Industry,
    Observation,
    TimeSeries,
)
from .templates import RelationLine, TemplateGraph, TemplateNode

__version__ = "0.1.0"

__all__ = [
    "CorrelationReport",
    "ConversionRule",
    "CubicBezier",
    "DecisionLabError",
    "FLATTEN_TOLERANCE",
    "GaussianBelief",
    "HistoryStore",
    "HitResult",
    "IndexDef",
    "Industry",
    "LevelingScheme",
    "LinearGaussianModel",
    "MdpModel",
    "Observation",
    "PairedSample",
    "RelationLine",
    "SIGMA_FLOOR",
    "TemplateGraph",
    "TemplateNode",
    "TimeSeries",
    "assign_level",
    "bellman_update",
    "compute_report",
    "correlation_ratio",
    "evaluate",
    "evaluate_policy",
    "extract_policy",
    "fit_mle",
    "flatten",
    "format_report",
    "hit_test",
    "kendall_tau",
    "label_history",
    "label_values",
    "learn_transition_matrix",
    "line_as_bezier",
    "log_likelihood",
    "membership_vector",
    "partial_correlation",
    "pearson",
    "predict_distribution",
    "predict_horizon",
    "predict_one",
    "spearman",
    "split",
    "synthesize",
    "total_correlation",
    "value_iteration",
]
