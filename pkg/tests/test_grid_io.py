"""
Testes da leitura e escrita do arquivo de rede.
"""

import numpy as np
import pytest

from src.config import DEFAULT_DROOP_ALPHA, DEFAULT_INERTIA_H
from src.utils.errors import ConfigError, GridFormatError
from src.utils.grid_io import load_grid, parse_grid, serialize_grid
from src.utils.samples import chain_grid, grid20, random_connected_grid, six_bus_grid

TWO_BUS = """
# menor rede válida
[bases]
f0_hz 50
v_base_kv 400
p_base_mva 100

[buses]
1 generator 1000 6 2 0.05
2 load

[lines]
1 2 5

[loads]
2 300
"""


# ============================================================================
# LEITURA
# ============================================================================

def test_two_bus_grid():
    """Menor rede válida: um gerador e uma carga."""
    grid = parse_grid(TWO_BUS)
    assert grid.n == 2
    assert grid.n_g == 1
    assert grid.n_l == 1
    assert grid.loads_mw == {2: 300.0}
    assert grid.lines[0].susceptance == 5.0


def test_generator_constants():
    """Constantes derivadas do gerador seguem H, p_f e α."""
    gen = parse_grid(TWO_BUS).generators[0]
    omega0 = 2 * np.pi * 50
    assert gen.rated_power == pytest.approx(1e9)
    assert gen.rotor_inertia_j == pytest.approx(2 * 6 * 1e9 / omega0 ** 2)
    assert gen.damping_d == pytest.approx(0.05 * omega0 / 1e9)
    assert gen.swing_gain_k == pytest.approx(omega0 / (2 * 6 * 1e9))


def test_optional_generator_fields_use_defaults():
    """Campos após P_rt são opcionais."""
    grid = parse_grid("[buses]\n1 generator 500\n2 load\n[lines]\n1 2 3\n")
    gen = grid.generators[0]
    assert gen.inertia_h == DEFAULT_INERTIA_H
    assert gen.droop_alpha == DEFAULT_DROOP_ALPHA
    assert grid.loads_mw == {}
    assert grid.load_consumption().tolist() == [0.0]


def test_bundled_twenty_bus_grid(data_dir):
    """Rede de 20 barras com 8 geradores e 12 cargas."""
    grid = load_grid(data_dir / "grid20.grid")
    assert grid.n == 20
    assert grid.n_g == 8
    assert grid.n_l == 12
    assert grid.loads_mw[9] < 0 and grid.loads_mw[10] < 0


@pytest.mark.parametrize("name,builder", [
    ("six_bus.grid", six_bus_grid),
    ("chain12.grid", chain_grid),
    ("grid20.grid", grid20),
])
def test_bundled_grids_match_builders(data_dir, name, builder):
    """Os arquivos em src/data correspondem aos geradores sintéticos."""
    assert load_grid(data_dir / name) == builder()


# ============================================================================
# ERROS
# ============================================================================

def test_zero_susceptance_is_rejected():
    """Susceptância nula viola a positividade."""
    text = TWO_BUS.replace("1 2 5", "1 2 0")
    with pytest.raises(GridFormatError, match="non-positive parameter"):
        parse_grid(text)


def test_syntax_error_reports_line_and_column():
    """Erros de sintaxe apontam linha e coluna."""
    with pytest.raises(GridFormatError) as info:
        parse_grid("[buses]\n1 generator abc\n", source="rede.grid")
    assert info.value.line == 2
    assert info.value.column == 13
    assert str(info.value).startswith("rede.grid: line 2, column 13")


def test_duplicate_bus_id():
    text = TWO_BUS.replace("2 load", "2 load\n2 load")
    with pytest.raises(GridFormatError, match="duplicate bus id 2"):
        parse_grid(text)


def test_disconnected_network():
    text = "[buses]\n1 generator 100\n2 load\n3 load\n[lines]\n1 2 4\n"
    with pytest.raises(GridFormatError, match="disconnected network"):
        parse_grid(text)


def test_bus_ids_must_be_dense():
    text = "[buses]\n1 generator 100\n3 load\n[lines]\n1 3 4\n"
    with pytest.raises(GridFormatError, match="dense"):
        parse_grid(text)


def test_load_on_generator_bus():
    text = TWO_BUS.replace("2 300", "1 300")
    with pytest.raises(GridFormatError, match="generator bus 1"):
        parse_grid(text)


def test_line_to_unknown_bus():
    text = TWO_BUS.replace("1 2 5", "1 2 5\n2 7 1")
    with pytest.raises(GridFormatError, match="unknown bus 7"):
        parse_grid(text)


def test_grid_without_generator():
    with pytest.raises(GridFormatError, match="at least one generator"):
        parse_grid("[buses]\n1 load\n2 load\n[lines]\n1 2 1\n")


def test_odd_pole_count():
    with pytest.raises(GridFormatError, match="p_f"):
        parse_grid("[buses]\n1 generator 100 6 3 0.05\n2 load\n[lines]\n1 2 1\n")


def test_grid_errors_are_config_errors():
    """Erros de arquivo saem com o código de configuração."""
    with pytest.raises(ConfigError) as info:
        parse_grid("[unknown]\n")
    assert info.value.exit_code == 2


def test_missing_file(tmp_path):
    with pytest.raises(GridFormatError, match="cannot read grid file"):
        load_grid(tmp_path / "nada.grid")


# ============================================================================
# IDA E VOLTA
# ============================================================================

@pytest.mark.parametrize("seed", range(5))
def test_roundtrip_random_grids(seed):
    """parse(serialize(g)) devolve a mesma rede, inclusive valores não redondos."""
    grid = random_connected_grid(7, np.random.default_rng(seed))
    text = serialize_grid(grid)
    assert parse_grid(text) == grid
    assert serialize_grid(parse_grid(text)) == text


def test_roundtrip_keeps_negative_loads():
    grid = grid20()
    assert parse_grid(serialize_grid(grid)).loads_mw == grid.loads_mw
