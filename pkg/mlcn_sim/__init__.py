from .config import MlcnConfig, Mode, ScenarioConfig
from .engine import (
    FailureEngine,
    MetricsRecord,
    MetricsSeries,
    mean_series,
    run_debc,
    run_dnbc,
    run_sebc,
    run_snbc,
)
from .exceptions import ArgumentError, EmissionError, GenerationError, UndefinedMetric
from .graph import Graph
from .network import LayeredNetwork, build_network
from .reporting import build_report, emit

__all__ = [
    "ArgumentError",
    "EmissionError",
    "FailureEngine",
    "GenerationError",
    "Graph",
    "LayeredNetwork",
    "MetricsRecord",
    "MetricsSeries",
    "MlcnConfig",
    "Mode",
    "ScenarioConfig",
    "UndefinedMetric",
    "build_network",
    "build_report",
    "emit",
    "mean_series",
    "run_debc",
    "run_dnbc",
    "run_sebc",
    "run_snbc",
]
__version__ = "0.1.0"
