"""
Modelo de dados da configuração de execução.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from src.config import (
    AGGREGATE_MODE,
    BRUTE_FORCE_BUDGET,
    COUPLING_SUSCEPTANCE_PU,
    DEFAULT_CHARGE_EFF,
    DEFAULT_DISCHARGE_EFF,
    DEFAULT_STORAGE_ALPHA,
    DEVIATION_UNITS,
    OUTPUT_DIR,
    SIM_DT,
    SIM_HORIZON,
    WORKERS,
)
from src.models.search import CeConfig
from src.models.simulation import TransientScenario


class SearchMethod(Enum):
    """Métodos de busca disponíveis."""
    BRUTE = "brute"
    CE = "ce"
    BOTH = "both"


class AggregateMode(Enum):
    """Agregação dos cenários no custo."""
    WORST = "worst"
    SINGLE = "single"


class DeviationUnits(Enum):
    """Unidade em que o desvio máximo entra no limite de capacidade."""
    RAD_S = "rad_s"
    HZ = "hz"


@dataclass(frozen=True)
class RunConfig:
    """Configuração completa de uma execução."""

    grid_path: Path
    scenarios: Tuple[TransientScenario, ...] = ()
    delta_f_ss_max_hz: float = 0.2
    p_trans_mw: Optional[float] = None
    n_s: int = 1
    method: SearchMethod = SearchMethod.BOTH
    ce: CeConfig = field(default_factory=CeConfig)
    dt: float = SIM_DT
    horizon: float = SIM_HORIZON
    coupling_pu: float = COUPLING_SUSCEPTANCE_PU
    deviation_units: DeviationUnits = DeviationUnits(DEVIATION_UNITS)
    aggregate: AggregateMode = AggregateMode(AGGREGATE_MODE)
    workers: int = WORKERS
    budget: int = BRUTE_FORCE_BUDGET
    out_dir: Path = OUTPUT_DIR
    storage_alpha: float = DEFAULT_STORAGE_ALPHA
    charge_eff: float = DEFAULT_CHARGE_EFF
    discharge_eff: float = DEFAULT_DISCHARGE_EFF
    source: Optional[Path] = None

    def override(self, **changes) -> "RunConfig":
        """Cópia com os valores informados (None é ignorado)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self) -> dict:
        return {
            "grid": str(self.grid_path),
            "n_S": self.n_s,
            "method": self.method.value,
            "delta_f_ss_max_hz": self.delta_f_ss_max_hz,
            "p_trans_mw": self.p_trans_mw,
            "dt_s": self.dt,
            "horizon_s": self.horizon,
            "coupling_pu": self.coupling_pu,
            "deviation_units": self.deviation_units.value,
            "aggregate": self.aggregate.value,
            "storage_alpha_s": self.storage_alpha,
            "ce": self.ce.to_dict(),
            "scenarios": [
                {"name": s.name, "events": [
                    {"bus": e.bus, "mw": e.delta_p_mw, "onset_s": e.onset} for e in s.events
                ]}
                for s in self.scenarios
            ],
        }
