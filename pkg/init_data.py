"""
Regrava as redes de exemplo em src/data a partir dos geradores de src/utils/samples.py
e congela a convergência de referência da CE em tests/data (só se ainda não existir).

Uso:
    python init_data.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from src.config import DATA_DIR
from src.utils.combinatorics import solution_count
from src.utils.grid_io import load_grid, save_grid
from src.utils.samples import chain_grid, grid20, six_bus_grid
from tests.helpers import GOLDEN_CONVERGENCE, run_golden_search

REDES = {
    "six_bus.grid": six_bus_grid,
    "chain12.grid": chain_grid,
    "grid20.grid": grid20,
}

print("Gerando redes de exemplo...")

for nome, construtor in REDES.items():
    grid = construtor()
    caminho = save_grid(grid, DATA_DIR / nome)
    if load_grid(caminho) != grid:
        print(f"  ❌ {nome}: releitura diferente da rede gerada")
        sys.exit(1)
    print(f"  ✅ {nome}: {grid.n} barras, {grid.n_g} geradores, "
          f"{len(grid.lines)} linhas, {solution_count(grid.n, 5)} distribuições de 5 unidades")

if GOLDEN_CONVERGENCE.exists():
    print(f"  ✅ {GOLDEN_CONVERGENCE.name}: mantido (apague para congelar de novo)")
else:
    with tempfile.TemporaryDirectory() as tmp:
        produzido = run_golden_search(Path(tmp))
        GOLDEN_CONVERGENCE.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(produzido, GOLDEN_CONVERGENCE)
    print(f"  ✅ {GOLDEN_CONVERGENCE.name}: congelado")

print("\nConcluído. Configurações de exemplo: six_bus.cfg, chain12.cfg, grid20.json")
