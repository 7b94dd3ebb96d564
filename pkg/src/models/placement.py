"""
Modelo de dados para distribuições de armazenamento e registros de avaliação.
"""

import hashlib
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple

from src.config import HASH_LENGTH


@dataclass(frozen=True)
class Distribution:
    """
    Multiconjunto de n_S unidades sobre as barras 1..n.

    ``counts[i]`` é o número de unidades na barra i+1. A ordem canônica é a
    ordem lexicográfica da lista não decrescente de barras ocupadas, que é a
    ordem de ``itertools.combinations_with_replacement``.
    """

    counts: Tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("unit counts must be non-negative")

    @classmethod
    def empty(cls, n: int) -> "Distribution":
        return cls((0,) * n)

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> "Distribution":
        """Cria a distribuição a partir de {barra: unidades}."""
        counts = [0] * n
        for bus, units in mapping.items():
            if not 1 <= bus <= n:
                raise KeyError(f"bus {bus} outside 1..{n}")
            counts[bus - 1] += int(units)
        return cls(tuple(counts))

    @classmethod
    def from_draws(cls, n: int, draws: Iterable[int]) -> "Distribution":
        """Agrega sorteios de barras (base 1) em contagens."""
        counts = [0] * n
        for bus in draws:
            counts[bus - 1] += 1
        return cls(tuple(counts))

    @classmethod
    def parse(cls, text: str, n: int) -> "Distribution":
        """Lê o formato ``"7:2,10:3"`` (vazio ou ``-`` para nenhuma unidade)."""
        text = text.strip()
        mapping: Dict[int, int] = {}
        if text and text != "-":
            for item in text.replace(" ", ",").split(","):
                if not item:
                    continue
                bus, _, units = item.partition(":")
                try:
                    bus_id = int(bus)
                    count = int(units) if units else 1
                except ValueError:
                    raise ValueError(f"invalid distribution entry {item!r}") from None
                mapping[bus_id] = mapping.get(bus_id, 0) + count
        return cls.from_mapping(n, mapping)

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def total_units(self) -> int:
        return sum(self.counts)

    def as_mapping(self) -> Dict[int, int]:
        """Barras ocupadas em ordem crescente."""
        return {i + 1: c for i, c in enumerate(self.counts) if c > 0}

    def occupied_buses(self) -> Tuple[int, ...]:
        return tuple(self.as_mapping())

    def sort_key(self) -> Tuple[int, ...]:
        """Chave da ordem canônica (contagens em ordem lexicográfica decrescente)."""
        return tuple(-c for c in self.counts)

    def label(self) -> str:
        mapping = self.as_mapping()
        if not mapping:
            return "-"
        return " ".join(f"{bus}:{units}" for bus, units in mapping.items())

    def digest(self) -> str:
        """Hash curto e estável usado nos nomes de arquivo de trajetória."""
        raw = ",".join(str(c) for c in self.counts).encode("utf-8")
        return hashlib.sha1(raw).hexdigest()[:HASH_LENGTH]

    def __str__(self):
        return "{" + ", ".join(f"bus{b}:{u}" for b, u in self.as_mapping().items()) + "}"


@dataclass(frozen=True)
class EvaluationRecord:
    """Resultado da avaliação de uma distribuição (pior caso entre cenários)."""

    distribution: Distribution
    cost: float
    nadir_hz: float
    coi_min_hz: float
    steady_state_hz: float
    time_of_nadir: float = 0.0
    worst_scenario: str = ""
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def cost_hz(self) -> float:
        return self.cost / (2 * math.pi)

    def to_dict(self) -> dict:
        """Converte o registro para dicionário com unidades explícitas."""
        return {
            "counts": self.distribution.as_mapping(),
            "cost_hz": self.cost_hz,
            "nadir_hz": self.nadir_hz,
            "coi_min_hz": self.coi_min_hz,
            "f_ss_hz": self.steady_state_hz,
            "t_nadir_s": self.time_of_nadir,
            "worst_scenario": self.worst_scenario,
        }


def is_better(candidate: EvaluationRecord, incumbent: Optional[EvaluationRecord],
              rtol: float) -> bool:
    """Compara custos com tolerância; empates vão para a menor chave canônica."""
    if incumbent is None:
        return True
    scale = max(abs(candidate.cost), abs(incumbent.cost), 1e-300)
    if math.isclose(candidate.cost, incumbent.cost, rel_tol=rtol, abs_tol=rtol * scale):
        return candidate.distribution.sort_key() < incumbent.distribution.sort_key()
    return candidate.cost < incumbent.cost
