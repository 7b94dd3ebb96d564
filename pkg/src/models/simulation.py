"""
Modelos de dados da simulação dinâmica: cenários, sistema montado,
trajetórias e métricas de frequência.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class TransientEvent:
    """Degrau de carga líquida (W) numa barra de carga a partir de ``onset`` (s)."""

    bus: int
    delta_p: float
    onset: float = 0.0

    @property
    def delta_p_mw(self) -> float:
        return self.delta_p / 1e6


@dataclass(frozen=True)
class TransientScenario:
    """Conjunto de eventos simulados juntos num horizonte."""

    events: Tuple[TransientEvent, ...]
    horizon: float
    name: str = "scenario"

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError("scenario horizon must be positive")
        for event in self.events:
            if not 0 <= event.onset < self.horizon:
                raise ValueError(
                    f"event onset {event.onset} outside [0, {self.horizon}) in scenario {self.name!r}"
                )

    def p_trans(self, t: float) -> float:
        """Transitório total ativo no instante t (W)."""
        return sum(e.delta_p for e in self.events if e.onset <= t)

    @property
    def total_step(self) -> float:
        """Transitório total depois de todos os eventos (W)."""
        return sum(e.delta_p for e in self.events)

    @classmethod
    def merged(cls, scenarios: Iterable["TransientScenario"], name: str = "combined") -> "TransientScenario":
        """Une todos os eventos num único cenário simultâneo."""
        scenarios = list(scenarios)
        events = tuple(e for s in scenarios for e in s.events)
        horizon = max(s.horizon for s in scenarios)
        return cls(events, horizon, name)


@dataclass(frozen=True)
class StateLayout:
    """Mapa dos estados: [δ (relativos ao gerador 1); ω; E_S]."""

    generator_buses: Tuple[int, ...]
    storage_buses: Tuple[int, ...]

    @property
    def n_g(self) -> int:
        return len(self.generator_buses)

    @property
    def n_s(self) -> int:
        return len(self.storage_buses)

    @property
    def n_gs(self) -> int:
        return self.n_g + self.n_s

    @property
    def n_states(self) -> int:
        return (self.n_gs - 1) + self.n_gs + self.n_s

    @property
    def delta(self) -> slice:
        return slice(0, self.n_gs - 1)

    @property
    def omega(self) -> slice:
        return slice(self.n_gs - 1, 2 * self.n_gs - 1)

    @property
    def omega_g(self) -> slice:
        start = self.n_gs - 1
        return slice(start, start + self.n_g)

    @property
    def omega_s(self) -> slice:
        start = self.n_gs - 1 + self.n_g
        return slice(start, start + self.n_s)

    @property
    def energy(self) -> slice:
        return slice(2 * self.n_gs - 1, self.n_states)

    def labels(self) -> Tuple[str, ...]:
        """Rótulos dos estados (geradores por ordinal, armazenamento pela barra)."""
        delta = ([f"delta_G_{i}" for i in range(2, self.n_g + 1)]
                 + [f"delta_S_{b}" for b in self.storage_buses])
        omega = ([f"omega_G_{i}" for i in range(1, self.n_g + 1)]
                 + [f"omega_S_{b}" for b in self.storage_buses])
        energy = [f"E_S_{b}" for b in self.storage_buses]
        return tuple(delta + omega + energy)


@dataclass(frozen=True)
class SystemMatrices:
    """
    Sistema linear invariante: dx/dt = A·x + B·u + c, com u = [P_ref; P_L].

    Potências em W, ângulos em rad, frequências em rad/s. P_L é a injeção
    líquida nas barras de carga (consumo com sinal negativo).
    """

    a_matrix: np.ndarray
    b_matrix: np.ndarray
    affine_term: np.ndarray
    layout: StateLayout
    omega0: float
    g_matrix: np.ndarray
    h_matrix: np.ndarray
    p_ref: np.ndarray
    load_injection0: np.ndarray
    load_buses: Tuple[int, ...]
    initial_state: np.ndarray
    inertias: np.ndarray
    generator_inverse_damping: np.ndarray
    storage_inverse_damping: np.ndarray

    def input_vector(self, load_injection: np.ndarray) -> np.ndarray:
        return np.concatenate([self.p_ref, load_injection])

    def derivative(self, state: np.ndarray, load_injection: Optional[np.ndarray] = None) -> np.ndarray:
        """Derivada do estado para uma injeção de carga (padrão: pré-evento)."""
        if load_injection is None:
            load_injection = self.load_injection0
        return self.a_matrix @ state + self.b_matrix @ self.input_vector(load_injection) + self.affine_term

    def storage_power(self, states: np.ndarray, load_injection: np.ndarray) -> np.ndarray:
        """P_S (W) para uma ou várias amostras de estado."""
        layout = self.layout
        rows = slice(layout.n_g, layout.n_gs)
        states = np.atleast_2d(states)
        delta = states[:, layout.delta]
        load_injection = np.atleast_2d(load_injection)
        return delta @ self.g_matrix[rows].T + load_injection @ self.h_matrix[rows].T


@dataclass
class SimulationTrace:
    """Trajetória amostrada de todos os estados numa grade de tempo fixa."""

    times: np.ndarray
    states: np.ndarray
    layout: StateLayout
    omega0: float
    coi_weights: np.ndarray
    storage_power: np.ndarray
    storage_power_left: np.ndarray
    scenario_name: str = ""
    warnings: List[str] = field(default_factory=list)

    @property
    def omega_generators(self) -> np.ndarray:
        return self.states[:, self.layout.omega_g]

    @property
    def omega_storage(self) -> np.ndarray:
        return self.states[:, self.layout.omega_s]

    @property
    def energy_storage(self) -> np.ndarray:
        return self.states[:, self.layout.energy]

    @property
    def angles(self) -> np.ndarray:
        return self.states[:, self.layout.delta]

    @property
    def coi_series(self) -> np.ndarray:
        """Frequência do centro de inércia, ponderada por J_i/J_tot."""
        return self.omega_generators @ self.coi_weights

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class FrequencyMetrics:
    """Métricas de frequência de uma trajetória (rad/s)."""

    nadir_omega: float
    nadir_cost: float
    coi_min_omega: float
    steady_state_omega: float
    time_of_nadir: float
    branch: str = "none"
    warnings: Tuple[str, ...] = ()

    @staticmethod
    def to_hz(omega: float) -> float:
        return omega / (2 * math.pi)

    @property
    def nadir_hz(self) -> float:
        return self.to_hz(self.nadir_omega)

    @property
    def coi_min_hz(self) -> float:
        return self.to_hz(self.coi_min_omega)

    @property
    def steady_state_hz(self) -> float:
        return self.to_hz(self.steady_state_omega)

    @property
    def cost_hz(self) -> float:
        return self.to_hz(self.nadir_cost)

    def to_dict(self) -> Dict[str, float]:
        return {
            "f_nadir_hz": self.nadir_hz,
            "f_ss_hz": self.steady_state_hz,
            "f_coi_min_hz": self.coi_min_hz,
            "cost_hz": self.cost_hz,
            "t_nadir_s": self.time_of_nadir,
            "branch": self.branch,
        }
