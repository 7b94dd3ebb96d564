"""Modelos de dados do otimizador."""

from .grid import (
    BusKind,
    GeneratorParams,
    StorageParams,
    LineSpec,
    Bus,
    GridModel,
    NodeLayout,
    ReducedNetwork,
)
from .placement import Distribution, EvaluationRecord
from .simulation import (
    TransientEvent,
    TransientScenario,
    StateLayout,
    SystemMatrices,
    SimulationTrace,
    FrequencyMetrics,
)
from .sizing import SizingSpec, SizingResult
from .search import CeConfig, CeState, CeResult, BruteForceResult
from .run_config import SearchMethod, AggregateMode, DeviationUnits, RunConfig

__all__ = [
    "BusKind", "GeneratorParams", "StorageParams", "LineSpec", "Bus", "GridModel",
    "NodeLayout", "ReducedNetwork", "Distribution", "EvaluationRecord",
    "TransientEvent", "TransientScenario", "StateLayout", "SystemMatrices",
    "SimulationTrace", "FrequencyMetrics", "SizingSpec", "SizingResult",
    "CeConfig", "CeState", "CeResult", "BruteForceResult",
    "SearchMethod", "AggregateMode", "DeviationUnits", "RunConfig",
]
