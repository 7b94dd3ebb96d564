"""
Modelo de dados da rede elétrica.
"""

import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from src.config import (
    DEFAULT_INERTIA_H,
    DEFAULT_POLE_PAIRS,
    DEFAULT_DROOP_ALPHA,
    DEFAULT_CHARGE_EFF,
    DEFAULT_DISCHARGE_EFF,
    NOMINAL_FREQUENCY_HZ,
    V_BASE_KV,
    P_BASE_MVA,
)


class BusKind(Enum):
    """Tipos de barra suportados."""
    GENERATOR = "generator"
    LOAD = "load"


@dataclass(frozen=True)
class GeneratorParams:
    """Parâmetros de um gerador síncrono e constantes derivadas."""

    rated_power_mw: float
    inertia_h: float = DEFAULT_INERTIA_H
    poles: int = DEFAULT_POLE_PAIRS
    droop_alpha: float = DEFAULT_DROOP_ALPHA
    omega0: float = 2 * math.pi * NOMINAL_FREQUENCY_HZ

    @property
    def rated_power(self) -> float:
        """Potência nominal em W."""
        return self.rated_power_mw * 1e6

    @property
    def rotor_inertia_j(self) -> float:
        """J = 2·H·P_rt/ω₀²·(p_f/2)²."""
        return 2 * self.inertia_h * self.rated_power / self.omega0 ** 2 * (self.poles / 2) ** 2

    @property
    def damping_d(self) -> float:
        """D_G = α·ω₀/P_rt, em 1/(W·s)."""
        return self.droop_alpha * self.omega0 / self.rated_power

    @property
    def inverse_damping(self) -> float:
        """1/D_G em W·s."""
        return 1.0 / self.damping_d

    @property
    def swing_gain_k(self) -> float:
        """K = (1/(J·ω₀))·(p_f/2)²."""
        return (self.poles / 2) ** 2 / (self.rotor_inertia_j * self.omega0)

    def to_dict(self):
        """Converte o objeto para dicionário."""
        return asdict(self)


@dataclass(frozen=True)
class StorageParams:
    """Parâmetros de uma unidade de armazenamento com inversor em droop."""

    damping_d: float
    filter_alpha: float
    charge_eff: float = DEFAULT_CHARGE_EFF
    discharge_eff: float = DEFAULT_DISCHARGE_EFF

    @property
    def inverse_damping(self) -> float:
        """1/D_S em W·s."""
        return 1.0 / self.damping_d

    @classmethod
    def from_inverse_damping(cls, inverse_damping: float, filter_alpha: float,
                             charge_eff: float = DEFAULT_CHARGE_EFF,
                             discharge_eff: float = DEFAULT_DISCHARGE_EFF):
        """Cria os parâmetros a partir da capacidade por unidade (W·s)."""
        if inverse_damping <= 0:
            raise ValueError("storage inverse damping must be positive")
        return cls(1.0 / inverse_damping, filter_alpha, charge_eff, discharge_eff)

    def to_dict(self):
        """Converte o objeto para dicionário."""
        return asdict(self)


@dataclass(frozen=True)
class LineSpec:
    """Linha de transmissão sem perdas (susceptância em p.u.)."""

    from_bus: int
    to_bus: int
    susceptance: float

    @property
    def pair(self) -> Tuple[int, int]:
        """Par não ordenado de barras."""
        return (min(self.from_bus, self.to_bus), max(self.from_bus, self.to_bus))


@dataclass(frozen=True)
class Bus:
    """Barra da rede."""

    bus_id: int
    kind: BusKind
    generator: Optional[GeneratorParams] = None

    @property
    def is_generator(self) -> bool:
        return self.kind is BusKind.GENERATOR


@dataclass(frozen=True)
class GridModel:
    """
    Rede elétrica imutável.

    As cargas guardam o consumo em MW por barra de carga (negativo para
    fontes renováveis). Os valores são mantidos exatamente como lidos do
    arquivo; as conversões para W acontecem nas propriedades.
    """

    buses: Tuple[Bus, ...]
    lines: Tuple[LineSpec, ...]
    loads_mw: Dict[int, float] = field(default_factory=dict)
    f0_hz: float = NOMINAL_FREQUENCY_HZ
    v_base_kv: float = V_BASE_KV
    p_base_mva: float = P_BASE_MVA

    @property
    def omega0(self) -> float:
        """Frequência nominal em rad/s."""
        return 2 * math.pi * self.f0_hz

    @property
    def p_base(self) -> float:
        """Potência base em VA."""
        return self.p_base_mva * 1e6

    @property
    def n(self) -> int:
        return len(self.buses)

    @property
    def generator_buses(self) -> Tuple[int, ...]:
        return tuple(b.bus_id for b in self.buses if b.is_generator)

    @property
    def load_buses(self) -> Tuple[int, ...]:
        return tuple(b.bus_id for b in self.buses if not b.is_generator)

    @property
    def n_g(self) -> int:
        return len(self.generator_buses)

    @property
    def n_l(self) -> int:
        return len(self.load_buses)

    @property
    def generators(self) -> Tuple[GeneratorParams, ...]:
        return tuple(b.generator for b in self.buses if b.is_generator)

    def load_consumption(self) -> np.ndarray:
        """Consumo (W) por barra de carga, na ordem das barras."""
        return np.array([self.loads_mw.get(b, 0.0) * 1e6 for b in self.load_buses], dtype=float)

    def generator_inverse_dampings(self) -> np.ndarray:
        """Vetor 1/D_G (W·s) na ordem dos geradores."""
        return np.array([g.inverse_damping for g in self.generators], dtype=float)


@dataclass(frozen=True)
class NodeLayout:
    """Ordem dos nós da matriz de admitância: geradores, armazenamento, cargas."""

    generator_buses: Tuple[int, ...]
    storage_buses: Tuple[int, ...]
    storage_units: Tuple[int, ...]
    load_buses: Tuple[int, ...]

    @property
    def n_g(self) -> int:
        return len(self.generator_buses)

    @property
    def n_s(self) -> int:
        return len(self.storage_buses)

    @property
    def n_l(self) -> int:
        return len(self.load_buses)

    @property
    def n_gs(self) -> int:
        return self.n_g + self.n_s

    @property
    def size(self) -> int:
        return self.n_gs + self.n_l

    def labels(self) -> Tuple[str, ...]:
        return (tuple(f"G{b}" for b in self.generator_buses)
                + tuple(f"S{b}" for b in self.storage_buses)
                + tuple(f"L{b}" for b in self.load_buses))


@dataclass(frozen=True)
class ReducedNetwork:
    """
    Rede reduzida: P_gs = G·δ_gs + H·P_L.

    ``g_full`` age sobre todos os ângulos de geradores e armazenamento;
    ``g_matrix`` descarta a coluna do gerador de referência (o primeiro),
    o que é exato porque ``g_full`` anula o vetor uniforme. Matrizes em p.u.
    """

    g_full: np.ndarray
    g_matrix: np.ndarray
    h_matrix: np.ndarray
    n_g: int
    n_s: int
    condition: float = 1.0

    @property
    def n_gs(self) -> int:
        return self.n_g + self.n_s

    @property
    def n_l(self) -> int:
        return self.h_matrix.shape[1]

    def injections(self, angles_gs: np.ndarray, load_injection: np.ndarray) -> np.ndarray:
        """Potências de geradores e armazenamento para ângulos absolutos δ_gs."""
        return self.g_full @ angles_gs + self.h_matrix @ load_injection
