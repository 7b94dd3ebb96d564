"""
Utilitários para validação de dados da rede e das buscas.
"""

import math
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class Validators:
    """Classe com métodos estáticos para validação."""

    @staticmethod
    def is_positive(value: float) -> bool:
        """Verifica se o valor é finito e estritamente positivo."""
        return isinstance(value, (int, float)) and math.isfinite(value) and value > 0

    @staticmethod
    def is_fraction(value: float) -> bool:
        """Verifica se o valor pertence a (0, 1]."""
        return Validators.is_positive(value) and value <= 1

    @staticmethod
    def is_even_positive(value: int) -> bool:
        """Número de polos: inteiro, par e positivo."""
        return isinstance(value, int) and value > 0 and value % 2 == 0

    @staticmethod
    def is_dense_range(ids: Sequence[int]) -> bool:
        """Identificadores formam exatamente 1..n."""
        return sorted(ids) == list(range(1, len(ids) + 1))

    @staticmethod
    def is_connected(n: int, edges: Iterable[tuple]) -> bool:
        """Verifica se o grafo de n barras (base 1) é conexo."""
        if n <= 1:
            return True
        edges = list(edges)
        if not edges:
            return False
        rows = [a - 1 for a, _ in edges]
        cols = [b - 1 for _, b in edges]
        graph = coo_matrix((np.ones(len(edges)), (rows, cols)), shape=(n, n))
        n_components, _ = connected_components(graph, directed=False)
        return n_components == 1

    @staticmethod
    def is_probability_vector(q: np.ndarray, atol: float = 1e-12) -> bool:
        """q_i ∈ [0, 1] e Σ q_i = 1 dentro da tolerância."""
        q = np.asarray(q, dtype=float)
        return (q.ndim == 1 and q.size > 0 and bool(np.all(q >= 0)) and bool(np.all(q <= 1))
                and abs(q.sum() - 1.0) <= atol)
