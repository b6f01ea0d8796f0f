"""FPT constant-factor approximation for correlation clustering with unknown pairs."""

__version__ = "0.1.0"

from .exceptions import (BudgetExceeded, CCError, ConfigError, InputError,  # noqa: E402
                         InvariantViolation, ParseError, PreconditionError)
from .graph import (MINUS, MISSING, PLUS, Clustering, DeltaParams,  # noqa: E402
                    MistakeReport, SignedGraph, count_mistakes, neighborhoods)
from .pipeline import PipelineConfig, RunReport, guarantee_bound, solve  # noqa: E402
from .estimator import CorrelationClustering, ExactCorrelationClustering  # noqa: E402

__all__ = [
    "BudgetExceeded", "CCError", "ConfigError", "InputError", "InvariantViolation",
    "ParseError", "PreconditionError", "MINUS", "MISSING", "PLUS", "Clustering",
    "DeltaParams", "MistakeReport", "SignedGraph", "count_mistakes", "neighborhoods",
    "PipelineConfig", "RunReport", "guarantee_bound", "solve",
    "CorrelationClustering", "ExactCorrelationClustering",
]
