"""Utilitários: leitura de arquivos, rede, dinâmica, busca e relatórios."""

from .charts import ChartManager
from .evaluator import Evaluator, EvaluationSettings
from .grid_io import load_grid, parse_grid, save_grid, serialize_grid
from .reports import ReportManager
from .sizing import SizingManager
from .validators import Validators

__all__ = [
    "ChartManager",
    "Evaluator",
    "EvaluationSettings",
    "ReportManager",
    "SizingManager",
    "Validators",
    "load_grid",
    "parse_grid",
    "save_grid",
    "serialize_grid",
]
