"""
Gravação dos relatórios de saída.

Layout fixo do diretório de saída::

    report.json
    ranking.csv
    convergence.csv
    traces/<hash>.csv

Os arquivos dependem apenas da configuração e da semente: nenhum carimbo de
tempo é gravado e os números usam 9 algarismos significativos.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.config import CSV_FLOAT_FORMAT
from src.models.placement import Distribution, EvaluationRecord
from src.models.search import CeResult
from src.models.simulation import SimulationTrace

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
RANKING_FILE = "ranking.csv"
CONVERGENCE_FILE = "convergence.csv"
SWEEP_FILE = "sweep.csv"
TRACES_DIR = "traces"

_TWO_PI = 2 * math.pi


def trace_frame(trace: SimulationTrace) -> pd.DataFrame:
    """
    Tabela da trajetória: frequências em Hz, energia em J, potência em MW,
    ângulos em rad.
    """
    layout = trace.layout
    columns: Dict[str, np.ndarray] = {"t": trace.times}
    for i in range(layout.n_g):
        columns[f"omega_G_{i + 1}"] = trace.omega_generators[:, i] / _TWO_PI
    for k, bus in enumerate(layout.storage_buses):
        columns[f"omega_S_{bus}"] = trace.omega_storage[:, k] / _TWO_PI
    for k, bus in enumerate(layout.storage_buses):
        columns[f"E_S_{bus}"] = trace.energy_storage[:, k]
    delta_labels = layout.labels()[: layout.n_gs - 1]
    for k, label in enumerate(delta_labels):
        columns[label] = trace.angles[:, k]
    columns["omega_coi"] = trace.coi_series / _TWO_PI
    for k, bus in enumerate(layout.storage_buses):
        columns[f"P_S_{bus}"] = trace.storage_power[:, k] / 1e6
    return pd.DataFrame(columns)


def ranking_frame(records: Sequence[EvaluationRecord]) -> pd.DataFrame:
    """Ranking por custo crescente (empates pela ordem canônica)."""
    ordered = sorted(records, key=lambda r: (r.cost, r.distribution.sort_key()))
    return pd.DataFrame([
        {
            "rank": rank,
            "counts": record.distribution.label(),
            "cost_hz": record.cost_hz,
            "f_nadir_hz": record.nadir_hz,
            "f_coi_min_hz": record.coi_min_hz,
            "f_ss_hz": record.steady_state_hz,
            "t_nadir_s": record.time_of_nadir,
            "worst_scenario": record.worst_scenario,
        }
        for rank, record in enumerate(ordered, start=1)
    ], columns=["rank", "counts", "cost_hz", "f_nadir_hz", "f_coi_min_hz", "f_ss_hz",
                "t_nadir_s", "worst_scenario"])


def convergence_frame(result: CeResult) -> pd.DataFrame:
    """Melhor custo por iteração, limiar γ e o vetor q depois da atualização."""
    rows = []
    for state in result.history:
        row = {
            "iteration": state.iteration,
            "best_cost_hz": state.best.cost_hz,
            "best_counts": state.best.distribution.label(),
            "iteration_best_cost_hz": state.iteration_best_cost / _TWO_PI,
            "gamma_hz": state.gamma / _TWO_PI,
        }
        for i, value in enumerate(state.q, start=1):
            row[f"q_{i}"] = value
        rows.append(row)
    return pd.DataFrame(rows)


def sweep_frame(baseline: EvaluationRecord, records: Sequence[EvaluationRecord]) -> pd.DataFrame:
    """Uma unidade em cada barra, mais a linha de referência sem armazenamento."""
    rows = []
    for record in [baseline, *records]:
        buses = record.distribution.occupied_buses()
        rows.append({
            "bus": buses[0] if buses else "none",
            "f_nadir_hz": record.nadir_hz,
            "f_coi_min_hz": record.coi_min_hz,
            "f_ss_hz": record.steady_state_hz,
            "cost_hz": record.cost_hz,
        })
    return pd.DataFrame(rows)


class ReportManager:
    """Gerenciador do diretório de saída."""

    def __init__(self, out_dir: Path):
        """Inicializa o gerenciador e cria o diretório."""
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

    @property
    def traces_dir(self) -> Path:
        return self.out_dir / TRACES_DIR

    def _write_csv(self, frame: pd.DataFrame, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        logger.info("Arquivo gravado: %s", path)
        return path

    def write_report(self, data: Dict[str, Any]) -> Path:
        """Grava ``report.json``."""
        path = self.out_dir / REPORT_FILE
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=4, ensure_ascii=False)
            f.write("\n")
        logger.info("Relatório gravado: %s", path)
        return path

    def write_ranking(self, records: Sequence[EvaluationRecord]) -> Path:
        return self._write_csv(ranking_frame(records), self.out_dir / RANKING_FILE)

    def write_convergence(self, result: CeResult) -> Path:
        return self._write_csv(convergence_frame(result), self.out_dir / CONVERGENCE_FILE)

    def write_sweep(self, baseline: EvaluationRecord, records: Sequence[EvaluationRecord]) -> Path:
        return self._write_csv(sweep_frame(baseline, records), self.out_dir / SWEEP_FILE)

    def write_trace(self, trace: SimulationTrace, dist: Distribution,
                    suffix: Optional[str] = None) -> Path:
        """Grava ``traces/<hash>.csv`` (ou ``<hash>-<sufixo>.csv``)."""
        name = dist.digest() if not suffix else f"{dist.digest()}-{suffix}"
        return self._write_csv(trace_frame(trace), self.traces_dir / f"{name}.csv")

    # ========================================================================
    # LEITURA (usada pelos gráficos)
    # ========================================================================

    def read_ranking(self) -> pd.DataFrame:
        return pd.read_csv(self.out_dir / RANKING_FILE)

    def read_convergence(self) -> pd.DataFrame:
        return pd.read_csv(self.out_dir / CONVERGENCE_FILE)

    def list_traces(self) -> List[Path]:
        if not self.traces_dir.exists():
            return []
        return sorted(self.traces_dir.glob("*.csv"))

    def read_report(self) -> Dict[str, Any]:
        with open(self.out_dir / REPORT_FILE, "r", encoding="utf-8") as f:
            return json.load(f)
