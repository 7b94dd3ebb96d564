"""
Matriz de admitância da rede em corrente contínua e sua redução.

A matriz Υ é a laplaciana ponderada pelas susceptâncias (p.u.) com os nós
ordenados em geradores, nós de armazenamento e cargas. Cada barra com
unidades de armazenamento ganha um nó próprio ligado à barra hospedeira por
uma susceptância de acoplamento.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix, diags

from src.config import COUPLING_SUSCEPTANCE_PU, U22_CONDITION_LIMIT
from src.models.grid import GridModel, NodeLayout, ReducedNetwork
from src.models.placement import Distribution
from src.utils.errors import ConfigError, DimensionMismatchError, SingularNetworkError

logger = logging.getLogger(__name__)


def node_layout(grid: GridModel, placement: Optional[Distribution] = None) -> NodeLayout:
    """Ordem dos nós para a rede e o posicionamento informados."""
    if placement is None:
        placement = Distribution.empty(grid.n)
    if placement.n != grid.n:
        raise ConfigError(
            f"distribution covers {placement.n} buses but the grid has {grid.n}"
        )
    mapping = placement.as_mapping()
    return NodeLayout(
        generator_buses=grid.generator_buses,
        storage_buses=tuple(mapping),
        storage_units=tuple(mapping.values()),
        load_buses=grid.load_buses,
    )


def build_admittance(grid: GridModel, placement: Optional[Distribution] = None,
                     coupling_b: float = COUPLING_SUSCEPTANCE_PU) -> np.ndarray:
    """
    Monta a matriz Υ (p.u.) sobre geradores, armazenamento e cargas.

    Args:
        grid: Rede elétrica
        placement: Distribuição das unidades de armazenamento
        coupling_b: Susceptância entre o nó de armazenamento e a barra

    Returns:
        Matriz densa simétrica com linhas de soma zero
    """
    if not coupling_b > 0:
        raise ConfigError(f"coupling susceptance must be positive, got {coupling_b}")
    layout = node_layout(grid, placement)

    # Posição de cada barra na ordem geradores, armazenamento, cargas
    position = {}
    for k, bus in enumerate(layout.generator_buses):
        position[bus] = k
    for k, bus in enumerate(layout.load_buses):
        position[bus] = layout.n_gs + k

    branches: List[Tuple[int, int, float]] = [
        (position[line.from_bus], position[line.to_bus], line.susceptance) for line in grid.lines
    ]
    for k, bus in enumerate(layout.storage_buses):
        branches.append((layout.n_g + k, position[bus], coupling_b))

    n_nodes = layout.size
    n_branches = len(branches)
    if n_branches == 0:
        return np.zeros((n_nodes, n_nodes))
    f = np.array([b[0] for b in branches], dtype=int)
    t = np.array([b[1] for b in branches], dtype=int)
    b = np.array([b[2] for b in branches], dtype=float)

    # Matriz de incidência ramo x nó e Υ = Cftᵀ·diag(b)·Cft
    i = np.r_[np.arange(n_branches), np.arange(n_branches)]
    cft = csr_matrix((np.r_[np.ones(n_branches), -np.ones(n_branches)], (i, np.r_[f, t])),
                     shape=(n_branches, n_nodes))
    upsilon = (cft.T @ diags(b) @ cft).toarray()
    return upsilon


def reduce_network(admittance: np.ndarray, n_g: int, n_s: int,
                   condition_limit: float = U22_CONDITION_LIMIT) -> ReducedNetwork:
    """
    Elimina os ângulos das cargas por complemento de Schur.

    G_full = U11 − U12·U22⁻¹·U21 e H = U12·U22⁻¹, de modo que
    P_gs = G_full·δ_gs + H·P_L. A coluna do primeiro gerador é removida de
    G_full porque as potências dependem apenas de ângulos relativos.

    Raises:
        DimensionMismatchError: matriz não quadrada ou partição impossível
        SingularNetworkError: U22 singular ou mal condicionada
    """
    admittance = np.asarray(admittance, dtype=float)
    if admittance.ndim != 2 or admittance.shape[0] != admittance.shape[1]:
        raise DimensionMismatchError(f"admittance must be square, got shape {admittance.shape}")
    n_gs = n_g + n_s
    size = admittance.shape[0]
    if n_g < 1 or n_s < 0 or n_gs > size:
        raise DimensionMismatchError(
            f"cannot partition a {size}x{size} matrix with n_G={n_g}, n_S={n_s}"
        )

    u11 = admittance[:n_gs, :n_gs]
    u12 = admittance[:n_gs, n_gs:]
    u21 = admittance[n_gs:, :n_gs]
    u22 = admittance[n_gs:, n_gs:]

    condition = 1.0
    if size == n_gs:
        g_full = u11.copy()
        h_matrix = np.zeros((n_gs, 0))
    else:
        condition = float(np.linalg.cond(u22))
        if not np.isfinite(condition) or condition > condition_limit:
            raise SingularNetworkError(
                f"load block U22 is singular (condition estimate {condition:.3e})", condition
            )
        # H = U12·U22⁻¹ calculado como (U22ᵀ \ U12ᵀ)ᵀ
        h_matrix = np.linalg.solve(u22.T, u12.T).T
        g_full = u11 - h_matrix @ u21

    logger.debug("Rede reduzida: n_G=%d, n_S=%d, n_L=%d, cond(U22)=%.3e",
                 n_g, n_s, size - n_gs, condition)
    return ReducedNetwork(
        g_full=g_full,
        g_matrix=g_full[:, 1:].copy(),
        h_matrix=h_matrix,
        n_g=n_g,
        n_s=n_s,
        condition=condition,
    )


def reduce_grid(grid: GridModel, placement: Optional[Distribution] = None,
                coupling_b: float = COUPLING_SUSCEPTANCE_PU) -> ReducedNetwork:
    """Atalho: monta Υ e reduz para a rede e o posicionamento."""
    layout = node_layout(grid, placement)
    return reduce_network(build_admittance(grid, placement, coupling_b), layout.n_g, layout.n_s)
