"""
Avaliação de distribuições por simulação.

Cada avaliação monta a rede com o armazenamento posicionado, simula todos os
cenários e guarda o pior custo |ω₀ − ω_nadir|. O ``Evaluator`` memoriza os
resultados por distribuição e pode distribuir as simulações num
``multiprocessing.Pool``; a ordem dos resultados é sempre a ordem pedida.
"""

import logging
import multiprocessing
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import (
    AGGREGATE_MODE,
    BLOWUP_BOUND,
    COUPLING_SUSCEPTANCE_PU,
    DEFAULT_STORAGE_ALPHA,
    SIM_DT,
    WORKERS,
)
from src.models.grid import GridModel, StorageParams
from src.models.placement import Distribution, EvaluationRecord
from src.models.simulation import FrequencyMetrics, SimulationTrace, TransientScenario
from src.models.sizing import SizingResult
from src.utils.dynamics import assemble_system, frequency_nadir, simulate
from src.utils.errors import ConfigError, EvaluationError, NumericalError
from src.utils.network import reduce_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvaluationSettings:
    """Parâmetros numéricos comuns a todas as avaliações."""

    dt: float = SIM_DT
    coupling_pu: float = COUPLING_SUSCEPTANCE_PU
    storage_alpha: float = DEFAULT_STORAGE_ALPHA
    aggregate: str = AGGREGATE_MODE
    blowup_bound: float = BLOWUP_BOUND


@dataclass
class ScenarioRun:
    """Trajetória e métricas de um cenário."""

    scenario: TransientScenario
    trace: SimulationTrace
    metrics: FrequencyMetrics


def scenario_set(scenarios: Sequence[TransientScenario], aggregate: str) -> List[TransientScenario]:
    """Cenários efetivamente simulados conforme o modo de agregação."""
    scenarios = list(scenarios)
    if not scenarios or not any(s.events for s in scenarios):
        raise ConfigError("no transient events configured")
    if aggregate == "single":
        return [TransientScenario.merged(scenarios)]
    if aggregate != "worst":
        raise ConfigError(f"unknown aggregate mode {aggregate!r}")
    return scenarios


def storage_for(sizing: SizingResult, storage_alpha: float) -> Optional[StorageParams]:
    """Parâmetros por unidade, ou None quando a capacidade por unidade é zero."""
    if sizing.per_unit_inverse_damping > 0:
        return StorageParams.from_inverse_damping(sizing.per_unit_inverse_damping, storage_alpha)
    return None


def simulate_distribution(dist: Distribution, grid: GridModel,
                          scenarios: Sequence[TransientScenario], sizing: SizingResult,
                          settings: EvaluationSettings = EvaluationSettings()) -> List[ScenarioRun]:
    """Simula todos os cenários para uma distribuição."""
    if dist.total_units and dist.total_units != sizing.n_s:
        raise ConfigError(
            f"distribution places {dist.total_units} units but sizing is for n_S = {sizing.n_s}"
        )
    storage = storage_for(sizing, settings.storage_alpha)
    placement = dist
    if storage is None and dist.total_units:
        logger.warning("Capacidade por unidade nula: nós de armazenamento omitidos para %s", dist)
        placement = Distribution.empty(grid.n)

    try:
        reduced = reduce_grid(grid, placement, settings.coupling_pu)
        system = assemble_system(grid, reduced, placement, storage)
        runs = []
        for scenario in scenario_set(scenarios, settings.aggregate):
            trace = simulate(system, scenario, settings.dt, settings.blowup_bound)
            runs.append(ScenarioRun(scenario, trace, frequency_nadir(trace)))
    except EvaluationError:
        raise
    except NumericalError as exc:
        raise EvaluationError(f"distribution {dist.label()}: {exc}", dist) from exc
    return runs


def record_from_runs(dist: Distribution, runs: Sequence[ScenarioRun]) -> EvaluationRecord:
    """Registro do pior cenário (o primeiro, em caso de empate)."""
    worst = max(runs, key=lambda run: run.metrics.nadir_cost)
    warnings = tuple(w for run in runs for w in list(run.trace.warnings) + list(run.metrics.warnings))
    m = worst.metrics
    return EvaluationRecord(
        distribution=dist,
        cost=m.nadir_cost,
        nadir_hz=m.nadir_hz,
        coi_min_hz=m.coi_min_hz,
        steady_state_hz=m.steady_state_hz,
        time_of_nadir=m.time_of_nadir,
        worst_scenario=worst.scenario.name,
        warnings=warnings,
    )


def evaluate(dist: Distribution, grid: GridModel, scenarios: Sequence[TransientScenario],
             sizing: SizingResult, settings: EvaluationSettings = EvaluationSettings()) -> EvaluationRecord:
    """
    Avalia uma distribuição: pior custo sobre o conjunto de cenários.

    Raises:
        EvaluationError: falha na redução ou na integração, com a distribuição
    """
    record = record_from_runs(dist, simulate_distribution(dist, grid, scenarios, sizing, settings))
    logger.debug("Avaliada %s: custo %.6g Hz", dist.label(), record.cost_hz)
    return record


# ============================================================================
# EXECUÇÃO EM PROCESSOS
# ============================================================================

_WORKER: Optional["Evaluator"] = None


def _init_worker(grid, scenarios, sizing, settings) -> None:
    global _WORKER
    _WORKER = Evaluator(grid, scenarios, sizing, settings, workers=1)


def _worker_evaluate(counts: Tuple[int, ...]):
    try:
        return ("ok", _WORKER.evaluate(Distribution(counts)))
    except EvaluationError as exc:
        return ("error", str(exc))


class Evaluator:
    """
    Avaliador com cache por distribuição.

    Attributes:
        grid: Rede elétrica
        scenarios: Cenários de transitório
        sizing: Capacidade por unidade
        settings: Parâmetros numéricos
        workers: Número de processos para ``evaluate_many``
    """

    def __init__(self, grid: GridModel, scenarios: Sequence[TransientScenario],
                 sizing: SizingResult, settings: EvaluationSettings = EvaluationSettings(),
                 workers: int = WORKERS):
        self.grid = grid
        self.scenarios = tuple(scenarios)
        self.sizing = sizing
        self.settings = settings
        self.workers = max(1, int(workers))
        self._cache: Dict[Tuple[int, ...], EvaluationRecord] = {}
        self._pool = None
        scenario_set(self.scenarios, settings.aggregate)

    @property
    def simulations(self) -> int:
        """Número de distribuições distintas já simuladas."""
        return len(self._cache)

    def evaluate(self, dist: Distribution) -> EvaluationRecord:
        """Avalia uma distribuição (com cache)."""
        cached = self._cache.get(dist.counts)
        if cached is None:
            cached = evaluate(dist, self.grid, self.scenarios, self.sizing, self.settings)
            self._cache[dist.counts] = cached
        return cached

    def evaluate_many(self, dists: Sequence[Distribution]) -> List[EvaluationRecord]:
        """Avalia várias distribuições preservando a ordem pedida."""
        pending = []
        seen = set()
        for dist in dists:
            if dist.counts not in self._cache and dist.counts not in seen:
                seen.add(dist.counts)
                pending.append(dist.counts)

        if self.workers > 1 and len(pending) > 1:
            pool = self._get_pool()
            for counts, (status, payload) in zip(pending, pool.map(_worker_evaluate, pending)):
                if status == "error":
                    raise EvaluationError(payload, Distribution(counts))
                self._cache[counts] = payload
        else:
            for counts in pending:
                self.evaluate(Distribution(counts))
        return [self._cache[dist.counts] for dist in dists]

    def _get_pool(self):
        if self._pool is None:
            logger.info("Iniciando %d processos de avaliação", self.workers)
            self._pool = multiprocessing.Pool(
                processes=self.workers,
                initializer=_init_worker,
                initargs=(self.grid, self.scenarios, self.sizing, self.settings),
            )
        return self._pool

    def close(self) -> None:
        """Encerra o pool de processos, se existir."""
        if self._pool is not None:
            self._pool.close()
            self._pool.join()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()
        return False
