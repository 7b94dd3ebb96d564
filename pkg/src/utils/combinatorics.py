"""
Contagem e enumeração das distribuições de armazenamento.

Uma distribuição é um multiconjunto de n_S unidades sobre n barras; há
C(n + n_S − 1, n_S) delas.
"""

import itertools
import math
from typing import Iterator

from src.config import COUNT_LIMIT
from src.models.placement import Distribution
from src.models.search import CeConfig
from src.utils.errors import CombinatoricsOverflowError


def solution_count(n: int, n_s: int, limit: int = COUNT_LIMIT) -> int:
    """
    C(n + n_S − 1, n_S) com verificação de limite.

    Raises:
        CombinatoricsOverflowError: contagem acima de ``limit``
    """
    if n < 1 or n_s < 0:
        raise ValueError(f"invalid sizes n={n}, n_S={n_s}")
    count = math.comb(n + n_s - 1, n_s)
    if count > limit:
        raise CombinatoricsOverflowError(
            f"C({n + n_s - 1}, {n_s}) exceeds the checked limit of {limit}"
        )
    return count


def enumerate_distributions(n: int, n_s: int) -> Iterator[Distribution]:
    """
    Gera todas as distribuições na ordem canônica, sem repetição.

    Para n=3, n_S=2: {2,0,0}, {1,1,0}, {1,0,1}, {0,2,0}, {0,1,1}, {0,0,2}.
    """
    solution_count(n, n_s)
    for draws in itertools.combinations_with_replacement(range(1, n + 1), n_s):
        yield Distribution.from_draws(n, draws)


def complexity_ratio(n: int, n_s: int, cfg: CeConfig) -> float:
    """Tamanho do espaço exaustivo dividido pelas avaliações da busca CE."""
    evaluations = cfg.evaluations
    if evaluations <= 0:
        raise ValueError("CE configuration performs no evaluations")
    return solution_count(n, n_s) / evaluations
