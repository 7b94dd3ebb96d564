"""
Configurações do otimizador de posicionamento de armazenamento (GSP).

Todos os valores podem ser sobrescritos por variáveis de ambiente.
Unidades internas: SI (W, J, s, rad/s). Arquivos de entrada e relatórios
usam MW, MWs e Hz.
"""

import logging
import math
import os
from pathlib import Path

# Diretório base do projeto
BASE_DIR = Path(__file__).parent.parent

# Diretório dos dados de exemplo (redes e configurações)
DATA_DIR = BASE_DIR / "src" / "data"

# Diretório padrão de saída
OUTPUT_DIR = Path(os.getenv("GSP_OUT", str(BASE_DIR / "results")))

# Configurações de log
LOG_LEVEL = os.getenv("GSP_LOG", "WARNING")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Bases do sistema por unidade
NOMINAL_FREQUENCY_HZ = float(os.getenv("GSP_F0", 50.0))
V_BASE_KV = float(os.getenv("GSP_V_BASE_KV", 400.0))
P_BASE_MVA = float(os.getenv("GSP_P_BASE_MVA", 100.0))

# Valores padrão dos geradores
DEFAULT_INERTIA_H = 6.0  # segundos
DEFAULT_POLE_PAIRS = 2  # número (par) de polos
DEFAULT_DROOP_ALPHA = 0.05

# Valores padrão do armazenamento
DEFAULT_STORAGE_ALPHA = float(os.getenv("GSP_STORAGE_ALPHA", 0.1))  # segundos
DEFAULT_CHARGE_EFF = 1.0
DEFAULT_DISCHARGE_EFF = 1.0
COUPLING_SUSCEPTANCE_PU = float(os.getenv("GSP_COUPLING_PU", 1000.0))

# Configurações da simulação
SIM_DT = float(os.getenv("GSP_DT", 1e-3))  # segundos
SIM_HORIZON = float(os.getenv("GSP_HORIZON", 30.0))  # segundos
BLOWUP_BOUND = float(os.getenv("GSP_BLOWUP", 2 * math.pi * 10))  # rad/s
STEADY_SLOPE_TOL = 1e-4  # rad/s²
STEADY_WINDOW = 0.05  # fração final do horizonte

# Tolerâncias numéricas
U22_CONDITION_LIMIT = 1e12
NADIR_ZERO_TOL = 1e-9  # rad/s
NADIR_MIXED_TOL = 1e-3  # rad/s
COST_TIE_RTOL = 1e-9
COUNT_LIMIT = 2 ** 63 - 1

# Configurações da busca
BRUTE_FORCE_BUDGET = int(os.getenv("GSP_BUDGET", 100_000))
CE_N_ITER = 20
CE_SAMPLES = 150
CE_ELITE_FRACTION = 0.125
CE_SMOOTHING = 0.03
CE_SEED = 0
WORKERS = int(os.getenv("GSP_WORKERS", 1))

# Convenções
DEVIATION_UNITS = "rad_s"  # rad_s ou hz
AGGREGATE_MODE = "worst"  # worst ou single

# Formatação dos relatórios
CSV_FLOAT_FORMAT = "%.9g"
HASH_LENGTH = 12

# Configurações de aplicação
APP_NAME = "GSP"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Posicionamento de armazenamento para mínimo nadir de frequência"


def configure_logging(level: str = None) -> None:
    """Configura o logger do pacote ``src`` a partir de ``GSP_LOG``."""
    level = level if level is not None else LOG_LEVEL
    if isinstance(level, str) and level.strip().isdigit():
        level = int(level)
    elif isinstance(level, str):
        level = level.strip().upper()

    logger = logging.getLogger("src")
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    try:
        logger.setLevel(level)
    except (ValueError, TypeError):
        logger.setLevel(logging.WARNING)
        logger.warning("Nível de log inválido em GSP_LOG: %r", level)
