"""
Ponto de entrada do otimizador de posicionamento de armazenamento.

Uso:
    python gsp.py search --config src/data/six_bus.cfg --out results/six_bus
"""

import sys
from pathlib import Path

# Adiciona o diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
