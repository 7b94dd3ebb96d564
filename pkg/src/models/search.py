"""
Modelos de dados das buscas (força bruta e Cross-Entropy).
"""

import math
from dataclasses import dataclass, field, asdict
from typing import List, Optional

import numpy as np

from src.config import CE_N_ITER, CE_SAMPLES, CE_ELITE_FRACTION, CE_SMOOTHING, CE_SEED
from src.models.placement import EvaluationRecord


def elite_size(elite_fraction: float, sample_count: int) -> int:
    """⌈ε·|X|⌉ limitado a [1, |X|], imune a ruído de ponto flutuante."""
    size = math.ceil(round(elite_fraction * sample_count, 9))
    return min(max(size, 1), max(sample_count, 1))


@dataclass(frozen=True)
class CeConfig:
    """Parâmetros da busca Cross-Entropy."""

    n_iter: int = CE_N_ITER
    samples: int = CE_SAMPLES
    elite_fraction: float = CE_ELITE_FRACTION
    smoothing: float = CE_SMOOTHING
    seed: int = CE_SEED

    def __post_init__(self):
        if self.n_iter < 0 or self.samples < 1:
            raise ValueError("n_iter must be >= 0 and samples >= 1")
        if not 0 < self.elite_fraction < 1:
            raise ValueError("elite_fraction must lie in (0, 1)")
        if not 0 < self.smoothing <= 1:
            raise ValueError("smoothing must lie in (0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def elite_size(self) -> int:
        return elite_size(self.elite_fraction, self.samples)

    @property
    def evaluations(self) -> int:
        return self.n_iter * self.samples

    def to_dict(self):
        """Converte o objeto para dicionário."""
        return asdict(self)


@dataclass
class CeState:
    """Estado de uma iteração CE."""

    q: np.ndarray
    iteration: int
    elite_size: int
    best: Optional[EvaluationRecord] = None
    occurrence_counts: Optional[np.ndarray] = None
    gamma: float = math.nan
    iteration_best_cost: float = math.nan


@dataclass
class CeResult:
    """Resultado da busca CE."""

    best: EvaluationRecord
    q_final: np.ndarray
    best_per_iteration: List[EvaluationRecord]
    history: List[CeState] = field(default_factory=list)

    @property
    def q_trajectory(self) -> np.ndarray:
        return np.array([state.q for state in self.history])


@dataclass
class BruteForceResult:
    """Resultado da força bruta: melhor registro e todos os avaliados."""

    best: EvaluationRecord
    records: List[EvaluationRecord]

    def ranking(self) -> List[EvaluationRecord]:
        """Registros ordenados por custo e, em empate, pela ordem canônica."""
        return sorted(self.records, key=lambda r: (r.cost, r.distribution.sort_key()))
