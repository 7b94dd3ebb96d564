"""
Hierarquia de exceções do GSP.

Cada exceção carrega o código de saída usado pela linha de comando:
0 sucesso, 2 erro de configuração, 3 falha numérica, 4 orçamento excedido.
"""

from typing import Optional, Sequence


class GspError(Exception):
    """Erro base do pacote."""

    exit_code = 1


# ============================================================================
# ERROS DE CONFIGURAÇÃO (código 2)
# ============================================================================

class ConfigError(GspError):
    """Configuração, cenário ou arquivo de entrada inválido."""

    exit_code = 2


class FileFormatError(ConfigError):
    """Erro de sintaxe ou de validação num arquivo de entrada."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
        if source:
            location = f"{source}: {location}" if location else source
        super().__init__(f"{location}: {message}" if location else message)


class GridFormatError(FileFormatError):
    """Erro no arquivo de rede."""


class InfeasibleSizingError(ConfigError):
    """Capacidade positiva exigida sem unidades de armazenamento."""


class EmptyIncumbentError(ConfigError):
    """Busca CE sem iterações: não há melhor solução."""

    def __init__(self, message: str, q: Sequence[float] = ()):
        self.q = list(q)
        super().__init__(message)


# ============================================================================
# ERROS NUMÉRICOS (código 3)
# ============================================================================

class NumericalError(GspError):
    """Falha numérica na redução ou na integração."""

    exit_code = 3


class SingularNetworkError(NumericalError):
    """Bloco U22 singular ou mal condicionado."""

    def __init__(self, message: str, condition: float = float("inf")):
        self.condition = condition
        super().__init__(message)


class DimensionMismatchError(NumericalError):
    """Dimensões incompatíveis entre matrizes e posicionamento."""


class IntegrationError(NumericalError):
    """Integração instável: desvio de frequência acima do limite."""

    def __init__(self, message: str, state: str = "", time: float = float("nan")):
        self.state = state
        self.time = time
        super().__init__(message)


class CombinatoricsOverflowError(NumericalError):
    """Contagem de soluções acima do limite verificado."""


class EvaluationError(NumericalError):
    """Erro numérico durante a avaliação de uma distribuição."""

    def __init__(self, message: str, distribution=None):
        self.distribution = distribution
        super().__init__(message)


# ============================================================================
# ORÇAMENTO (código 4)
# ============================================================================

class BudgetExceededError(GspError):
    """Espaço de busca maior que o orçamento da força bruta."""

    exit_code = 4

    def __init__(self, message: str, count: int = 0, ratio: float = float("nan")):
        self.count = count
        self.ratio = ratio
        super().__init__(message)
