"""
Dimensionamento da capacidade de droop do armazenamento.

O limite inferior de Σ 1/D_S que mantém o desvio de regime abaixo de
Δω_ss,max após uma perda P_trans é

    max(0, 3·P_trans/Δω_ss,max − Σ 1/D_G)

e a capacidade total é dividida igualmente entre as n_S unidades.
"""

import logging
import math

from src.config import DEVIATION_UNITS
from src.models.grid import GridModel
from src.models.sizing import SizingResult, SizingSpec
from src.utils.errors import InfeasibleSizingError

logger = logging.getLogger(__name__)


class SizingManager:
    """Gerenciador de dimensionamento do armazenamento."""

    @staticmethod
    def total_storage_bound(spec: SizingSpec) -> float:
        """Capacidade total mínima Σ 1/D_S (W·s); zero se os geradores bastam."""
        required = 3.0 * spec.p_trans / spec.delta_omega_ss_max
        return max(0.0, required - spec.generator_inverse_damping)

    @staticmethod
    def split_capacity(total: float, n_s: int) -> SizingResult:
        """
        Divide a capacidade igualmente entre as unidades.

        Raises:
            InfeasibleSizingError: n_S = 0 com capacidade positiva exigida
        """
        if n_s < 0:
            raise ValueError("n_S must be non-negative")
        if total < 0:
            raise ValueError("total capacity must be non-negative")
        if n_s == 0:
            if total > 0:
                raise InfeasibleSizingError(
                    f"storage capacity of {total / 1e6:.6g} MWs is required but n_S = 0"
                )
            return SizingResult(0.0, 0.0, 0, True)
        return SizingResult(total, total / n_s, n_s, True)

    @staticmethod
    def deviation_limit(delta_f_hz: float, units: str = DEVIATION_UNITS) -> float:
        """
        Converte o desvio máximo em Hz para o valor usado no limite.

        ``rad_s`` multiplica por 2π; ``hz`` usa o número em Hz diretamente.
        """
        if units == "rad_s":
            return 2 * math.pi * delta_f_hz
        if units == "hz":
            return delta_f_hz
        raise ValueError(f"unknown deviation units {units!r}")

    @staticmethod
    def spec_for_grid(grid: GridModel, p_trans: float, delta_f_hz: float,
                      units: str = DEVIATION_UNITS) -> SizingSpec:
        """Monta a especificação com os amortecimentos dos geradores da rede."""
        return SizingSpec(
            p_trans=p_trans,
            delta_omega_ss_max=SizingManager.deviation_limit(delta_f_hz, units),
            generator_dampings=tuple(g.damping_d for g in grid.generators),
        )

    @staticmethod
    def size_for_grid(grid: GridModel, p_trans: float, delta_f_hz: float, n_s: int,
                      units: str = DEVIATION_UNITS) -> SizingResult:
        """
        Limite e divisão numa só chamada.

        Sem unidades e com limite positivo devolve ``feasible=False`` em vez
        de levantar exceção; usado pelos relatórios.
        """
        total = SizingManager.total_storage_bound(
            SizingManager.spec_for_grid(grid, p_trans, delta_f_hz, units)
        )
        try:
            result = SizingManager.split_capacity(total, n_s)
        except InfeasibleSizingError:
            logger.warning("Dimensionamento inviável: %.6g MWs exigidos com n_S = 0", total / 1e6)
            return SizingResult(total, 0.0, 0, False)
        logger.info("Capacidade total %.6g MWs, %.6g MWs por unidade (n_S = %d)",
                    result.total_mws, result.per_unit_mws, n_s)
        return result


total_storage_bound = SizingManager.total_storage_bound
split_capacity = SizingManager.split_capacity
