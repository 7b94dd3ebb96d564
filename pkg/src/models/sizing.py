"""
Modelos de dados do dimensionamento do armazenamento.
"""

from dataclasses import dataclass, asdict
from typing import Tuple


@dataclass(frozen=True)
class SizingSpec:
    """Entradas do limite de capacidade: perda (W), desvio máximo (rad/s), D_G."""

    p_trans: float
    delta_omega_ss_max: float
    generator_dampings: Tuple[float, ...]

    def __post_init__(self):
        if self.p_trans < 0:
            raise ValueError("p_trans must be non-negative")
        if self.delta_omega_ss_max <= 0:
            raise ValueError("delta_omega_ss_max must be positive")
        if any(d <= 0 for d in self.generator_dampings):
            raise ValueError("generator dampings must be positive")

    @property
    def generator_inverse_damping(self) -> float:
        """Σ 1/D_G em W·s."""
        return sum(1.0 / d for d in self.generator_dampings)


@dataclass(frozen=True)
class SizingResult:
    """Capacidade total e por unidade (1/D_S, W·s)."""

    total_inverse_damping: float
    per_unit_inverse_damping: float
    n_s: int
    feasible: bool = True

    @property
    def total_mws(self) -> float:
        return self.total_inverse_damping / 1e6

    @property
    def per_unit_mws(self) -> float:
        return self.per_unit_inverse_damping / 1e6

    def to_dict(self):
        """Converte o objeto para dicionário."""
        return asdict(self)

    def to_report(self) -> dict:
        return {
            "total_MWs": self.total_mws,
            "per_unit_MWs": self.per_unit_mws,
            "n_S": self.n_s,
            "feasible": self.feasible,
        }
