"""
Testes da matriz de admitância e da redução de rede.
"""

import numpy as np
import pytest

from src.models.placement import Distribution
from src.utils.dynamics import frequency_nadir, simulate
from src.utils.errors import ConfigError, DimensionMismatchError, SingularNetworkError
from src.utils.network import build_admittance, node_layout, reduce_grid, reduce_network
from src.utils.samples import build_grid, random_connected_grid, relabel_loads
from tests.helpers import build_system, loss_scenario

RANDOM_GRIDS = 50


def _hand_admittance(grid, placement, coupling_b):
    """Υ montada entrada a entrada a partir da definição."""
    layout = node_layout(grid, placement)
    index = {}
    for k, bus in enumerate(layout.generator_buses):
        index[bus] = k
    for k, bus in enumerate(layout.load_buses):
        index[bus] = layout.n_gs + k
    edges = [(index[l.from_bus], index[l.to_bus], l.susceptance) for l in grid.lines]
    edges += [(layout.n_g + k, index[bus], coupling_b) for k, bus in enumerate(layout.storage_buses)]
    upsilon = np.zeros((layout.size, layout.size))
    for a, b, y in edges:
        upsilon[a, b] -= y
        upsilon[b, a] -= y
        upsilon[a, a] += y
        upsilon[b, b] += y
    return upsilon


def _random_grids(count=RANDOM_GRIDS):
    rng = np.random.default_rng(2024)
    for _ in range(count):
        yield random_connected_grid(int(rng.integers(3, 9)), rng), rng


# ============================================================================
# ADMITÂNCIA
# ============================================================================

def test_two_bus_admittance(two_bus):
    """Uma linha com b = 5 p.u.: laplaciana 2x2."""
    np.testing.assert_array_equal(build_admittance(two_bus), [[5.0, -5.0], [-5.0, 5.0]])


def test_admittance_is_laplacian():
    """Simétrica, linhas de soma zero e fora da diagonal não positiva."""
    for grid, rng in _random_grids(20):
        bus = int(rng.integers(1, grid.n + 1))
        upsilon = build_admittance(grid, Distribution.from_mapping(grid.n, {bus: 2}))
        np.testing.assert_allclose(upsilon, upsilon.T, rtol=0, atol=1e-12)
        np.testing.assert_allclose(upsilon.sum(axis=1), 0.0, atol=1e-9)
        off = upsilon[~np.eye(upsilon.shape[0], dtype=bool)]
        assert np.all(off <= 0)


def test_storage_node_has_single_coupling():
    """O nó de armazenamento só se liga à barra hospedeira."""
    grid = random_connected_grid(5, np.random.default_rng(5))
    host = grid.load_buses[0]
    placement = Distribution.from_mapping(grid.n, {host: 1})
    upsilon = build_admittance(grid, placement, coupling_b=1000.0)
    row = upsilon[grid.n_g].copy()
    assert upsilon.shape == (6, 6)
    assert row[grid.n_g] == pytest.approx(1000.0)
    row[grid.n_g] = 0.0
    assert np.count_nonzero(row) == 1
    assert row[grid.n_g + 1 + grid.load_buses.index(host)] == -1000.0
    np.testing.assert_allclose(upsilon, _hand_admittance(grid, placement, 1000.0))


def test_matches_hand_construction():
    for grid, rng in _random_grids(10):
        bus = int(rng.integers(1, grid.n + 1))
        placement = Distribution.from_mapping(grid.n, {bus: 1, 1: 1})
        np.testing.assert_allclose(build_admittance(grid, placement, 250.0),
                                   _hand_admittance(grid, placement, 250.0))


def test_units_at_one_bus_form_one_node(six_bus):
    layout = node_layout(six_bus, Distribution.from_mapping(6, {5: 3}))
    assert layout.storage_buses == (5,)
    assert layout.storage_units == (3,)
    assert layout.labels() == ("G1", "G2", "G3", "S5", "L4", "L5", "L6")


def test_placement_size_mismatch(six_bus):
    with pytest.raises(ConfigError):
        build_admittance(six_bus, Distribution.empty(7))


def test_non_positive_coupling(six_bus):
    with pytest.raises(ConfigError, match="coupling"):
        build_admittance(six_bus, Distribution.from_mapping(6, {4: 1}), coupling_b=0.0)


# ============================================================================
# REDUÇÃO
# ============================================================================

def test_reduction_matches_direct_dc_flow():
    """P_gs da forma reduzida igual à solução direta do fluxo de carga CC."""
    for grid, rng in _random_grids():
        placement = Distribution.from_mapping(grid.n, {int(rng.integers(1, grid.n + 1)): 1})
        layout = node_layout(grid, placement)
        upsilon = build_admittance(grid, placement)
        reduced = reduce_network(upsilon, layout.n_g, layout.n_s)
        n_gs = layout.n_gs

        delta = rng.normal(size=n_gs)
        p_load = rng.normal(size=layout.n_l)
        # Ângulos das cargas a partir das equações de balanço das cargas
        theta_l = np.linalg.solve(upsilon[n_gs:, n_gs:], p_load - upsilon[n_gs:, :n_gs] @ delta)
        direct = upsilon[:n_gs, :n_gs] @ delta + upsilon[:n_gs, n_gs:] @ theta_l

        got = reduced.injections(delta, p_load)
        np.testing.assert_allclose(got, direct, rtol=1e-10, atol=1e-10 * np.abs(direct).max())
        # Rede sem perdas
        assert abs(got.sum() + p_load.sum()) < 1e-9 * (np.abs(got).sum() + np.abs(p_load).sum())


def test_uniform_angles_give_zero_power():
    for grid, _ in _random_grids(10):
        reduced = reduce_grid(grid)
        np.testing.assert_allclose(reduced.g_full @ np.ones(grid.n_g), 0.0, atol=1e-9)


def test_reference_column_removed(six_bus):
    reduced = reduce_grid(six_bus, Distribution.from_mapping(6, {4: 1, 6: 1}))
    assert reduced.g_full.shape == (5, 5)
    assert reduced.g_matrix.shape == (5, 4)
    np.testing.assert_array_equal(reduced.g_matrix, reduced.g_full[:, 1:])
    assert reduced.h_matrix.shape == (5, 3)


def test_grid_without_loads():
    """Sem cargas: H sem colunas e G_full = U11."""
    grid = build_grid({1: 500.0, 2: 500.0}, 2, [(1, 2, 5.0)])
    upsilon = build_admittance(grid)
    reduced = reduce_network(upsilon, 2, 0)
    assert reduced.h_matrix.shape == (2, 0)
    np.testing.assert_array_equal(reduced.g_full, upsilon)


def test_singular_load_block():
    upsilon = np.array([[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, 0.0]])
    with pytest.raises(SingularNetworkError) as info:
        reduce_network(upsilon, 2, 0)
    assert info.value.exit_code == 3


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        reduce_network(np.zeros((3, 2)), 1, 0)
    with pytest.raises(DimensionMismatchError):
        reduce_network(np.eye(3), 2, 2)


# ============================================================================
# INVARIÂNCIA À NUMERAÇÃO
# ============================================================================

def test_relabeling_loads_keeps_generator_frequencies(six_bus):
    """Permutar a numeração das cargas não altera as frequências dos geradores."""
    relabeled = relabel_loads(six_bus, [2, 0, 1])
    assert relabeled.loads_mw == {6: 800.0, 4: 900.0, 5: 700.0}

    original = simulate(build_system(six_bus), loss_scenario(6, 200.0, horizon=2.0))
    moved = simulate(build_system(relabeled), loss_scenario(5, 200.0, horizon=2.0))
    np.testing.assert_allclose(moved.omega_generators, original.omega_generators, rtol=0, atol=1e-9)
    assert frequency_nadir(moved).nadir_cost == pytest.approx(frequency_nadir(original).nadir_cost, rel=1e-9)
