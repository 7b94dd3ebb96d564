"""
Construtores auxiliares usados por vários módulos de teste.
"""

from pathlib import Path

from src.cli import main
from src.config import DATA_DIR
from src.models.grid import StorageParams
from src.models.simulation import TransientEvent, TransientScenario
from src.utils.dynamics import assemble_system
from src.utils.network import reduce_grid
from src.utils.reports import CONVERGENCE_FILE

GOLDEN_DIR = Path(__file__).parent / "data"
GOLDEN_CONVERGENCE = GOLDEN_DIR / "ce_convergence_six_bus.csv"


def loss_scenario(bus: int, mw: float, horizon: float = 5.0, onset: float = 0.0,
                  name: str = "perda") -> TransientScenario:
    """Cenário de um único degrau de carga (MW) numa barra."""
    return TransientScenario((TransientEvent(bus, mw * 1e6, onset),), horizon, name)


def unit_storage(inverse_damping_mws: float, alpha: float = 0.1) -> StorageParams:
    """Unidade de armazenamento com capacidade 1/D_S em MWs."""
    return StorageParams.from_inverse_damping(inverse_damping_mws * 1e6, alpha)


def build_system(grid, placement=None, storage=None, coupling_b: float = 1000.0):
    """Reduz a rede e monta o sistema linear para um posicionamento."""
    reduced = reduce_grid(grid, placement, coupling_b)
    return assemble_system(grid, reduced, placement, storage)


def run_golden_search(out_dir: Path) -> Path:
    """Busca CE de referência (six_bus.cfg, semente 0); devolve o convergence.csv."""
    code = main(["search", "--config", str(DATA_DIR / "six_bus.cfg"), "--method", "ce",
                 "--seed", "0", "--workers", "1", "--out", str(out_dir)])
    if code != 0:
        raise RuntimeError(f"reference search exited with code {code}")
    return Path(out_dir) / CONVERGENCE_FILE
