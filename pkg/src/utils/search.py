"""
Busca do melhor posicionamento: força bruta e Cross-Entropy.

A força bruta avalia todas as distribuições na ordem canônica. A busca CE
sorteia |X| distribuições por iteração a partir de um vetor de
probabilidades q sobre as barras (n_S sorteios categóricos com reposição),
seleciona a elite ⌈ε·|X|⌉ e atualiza

    q'_i = β·O_i/(⌈ε·|X|⌉·n_S) + (1 − β)·q_i

renormalizando em seguida. Cada amostra usa um gerador Philox próprio,
derivado de (semente, iteração, índice da amostra).
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import BRUTE_FORCE_BUDGET, COST_TIE_RTOL
from src.models.grid import GridModel
from src.models.placement import Distribution, EvaluationRecord, is_better
from src.models.search import BruteForceResult, CeConfig, CeResult, CeState, elite_size
from src.models.simulation import TransientScenario
from src.models.sizing import SizingResult
from src.utils.combinatorics import complexity_ratio, enumerate_distributions, solution_count
from src.utils.errors import BudgetExceededError, CombinatoricsOverflowError, EmptyIncumbentError
from src.utils.evaluator import EvaluationSettings, Evaluator

logger = logging.getLogger(__name__)

_CHUNK = 256


def select_best(records: Sequence[EvaluationRecord], rtol: float = COST_TIE_RTOL) -> EvaluationRecord:
    """Menor custo; empates vão para a menor distribuição na ordem canônica."""
    best = None
    for record in records:
        if is_better(record, best, rtol):
            best = record
    if best is None:
        raise ValueError("no records to select from")
    return best


# ============================================================================
# FORÇA BRUTA
# ============================================================================

def brute_force_search(grid: GridModel, scenarios: Sequence[TransientScenario],
                       sizing: SizingResult, n_s: int, budget: int = BRUTE_FORCE_BUDGET,
                       evaluator: Optional[Evaluator] = None,
                       settings: EvaluationSettings = EvaluationSettings(),
                       ce_config: Optional[CeConfig] = None) -> BruteForceResult:
    """
    Avalia todas as distribuições de n_S unidades.

    Args:
        grid: Rede elétrica
        scenarios: Cenários de transitório
        sizing: Capacidade por unidade
        n_s: Número de unidades
        budget: Número máximo de distribuições
        evaluator: Avaliador compartilhado (um novo é criado se omitido)
        settings: Parâmetros numéricos do avaliador criado
        ce_config: Configuração CE usada na orientação quando o orçamento estoura

    Returns:
        BruteForceResult com o melhor registro e todos os registros na
        ordem canônica

    Raises:
        BudgetExceededError: o espaço de busca excede ``budget``
    """
    cfg = ce_config or CeConfig()
    try:
        count = solution_count(grid.n, n_s)
    except CombinatoricsOverflowError as exc:
        raise BudgetExceededError(f"{exc}; use the CE search instead", count=0) from exc
    if count > budget:
        ratio = complexity_ratio(grid.n, n_s, cfg)
        raise BudgetExceededError(
            f"{count} distributions exceed the brute-force budget of {budget}; the complexity "
            f"ratio against the CE search ({cfg.n_iter} x {cfg.samples} evaluations) is "
            f"{ratio:.2f}, use method=ce",
            count=count, ratio=ratio,
        )

    evaluator = evaluator or Evaluator(grid, scenarios, sizing, settings, workers=1)
    logger.info("Força bruta: %d distribuições (n=%d, n_S=%d)", count, grid.n, n_s)
    records: List[EvaluationRecord] = []
    chunk: List[Distribution] = []
    for dist in enumerate_distributions(grid.n, n_s):
        chunk.append(dist)
        if len(chunk) == _CHUNK:
            records.extend(evaluator.evaluate_many(chunk))
            chunk = []
    if chunk:
        records.extend(evaluator.evaluate_many(chunk))

    best = select_best(records)
    logger.info("Força bruta concluída: melhor %s com custo %.6g Hz", best.distribution.label(), best.cost_hz)
    return BruteForceResult(best=best, records=records)


# ============================================================================
# CROSS-ENTROPY
# ============================================================================

def sample_rng(seed: int, iteration: int, index: int) -> np.random.Generator:
    """Gerador Philox independente para (semente, iteração, amostra)."""
    sequence = np.random.SeedSequence(seed, spawn_key=(iteration, index))
    return np.random.Generator(np.random.Philox(sequence))


def elite_threshold(costs: Sequence[float], elite_fraction: float) -> Tuple[float, List[int]]:
    """
    Limiar γ e índices da elite.

    γ é o ⌈ε·|X|⌉-ésimo menor custo; a elite são as ⌈ε·|X|⌉ amostras de
    menor custo, com empates resolvidos pela ordem das amostras.

    Returns:
        (γ, índices da elite em ordem de custo)
    """
    costs = np.asarray(costs, dtype=float)
    if costs.size == 0:
        raise ValueError("elite_threshold needs at least one cost")
    k = elite_size(elite_fraction, costs.size)
    order = np.argsort(costs, kind="stable")[:k]
    return float(costs[order[-1]]), [int(i) for i in order]


def ce_sample(q: np.ndarray, n_s: int, rng: np.random.Generator) -> Distribution:
    """n_S sorteios categóricos com reposição sobre as barras."""
    q = np.asarray(q, dtype=float)
    if n_s == 0:
        return Distribution.empty(q.size)
    draws = rng.choice(q.size, size=n_s, p=q) + 1
    return Distribution.from_draws(q.size, draws.tolist())


def occurrence_counts(elite: Sequence[Distribution], n: int) -> np.ndarray:
    """O_i: unidades colocadas na barra i somadas sobre a elite."""
    counts = np.zeros(n)
    for dist in elite:
        counts += np.asarray(dist.counts, dtype=float)
    return counts


def ce_update(q: np.ndarray, elite: Sequence[Distribution], smoothing: float,
              elite_fraction: float, sample_count: int) -> np.ndarray:
    """
    Atualização suavizada do vetor de probabilidades.

    Returns:
        Novo q, não negativo e com soma 1
    """
    q = np.asarray(q, dtype=float)
    if not elite:
        raise ValueError("ce_update needs a non-empty elite")
    if smoothing == 0:
        return q.copy()
    n_s = elite[0].total_units
    if n_s == 0:
        return q.copy()
    k = elite_size(elite_fraction, sample_count)
    raw = smoothing * occurrence_counts(elite, q.size) / (k * n_s) + (1 - smoothing) * q
    return raw / raw.sum()


def ce_search(grid: GridModel, scenarios: Sequence[TransientScenario], sizing: SizingResult,
              n_s: int, cfg: CeConfig, evaluator: Optional[Evaluator] = None,
              settings: EvaluationSettings = EvaluationSettings()) -> CeResult:
    """
    Busca Cross-Entropy com incumbente global.

    Raises:
        EmptyIncumbentError: ``cfg.n_iter == 0``; carrega o q uniforme
    """
    n = grid.n
    q = np.full(n, 1.0 / n)
    if cfg.n_iter == 0:
        raise EmptyIncumbentError("CE search ran no iterations: no incumbent", q)

    evaluator = evaluator or Evaluator(grid, scenarios, sizing, settings, workers=1)
    k = cfg.elite_size
    incumbent: Optional[EvaluationRecord] = None
    best_per_iteration: List[EvaluationRecord] = []
    history: List[CeState] = []

    for iteration in range(cfg.n_iter):
        samples = [ce_sample(q, n_s, sample_rng(cfg.seed, iteration, index))
                   for index in range(cfg.samples)]
        records = evaluator.evaluate_many(samples)
        costs = [r.cost for r in records]
        gamma, elite_idx = elite_threshold(costs, cfg.elite_fraction)
        elite = [samples[i] for i in elite_idx]

        for record in records:
            if is_better(record, incumbent, COST_TIE_RTOL):
                incumbent = record
        best_per_iteration.append(incumbent)

        occurrences = occurrence_counts(elite, n)
        q = ce_update(q, elite, cfg.smoothing, cfg.elite_fraction, cfg.samples)
        history.append(CeState(
            q=q.copy(),
            iteration=iteration + 1,
            elite_size=k,
            best=incumbent,
            occurrence_counts=occurrences,
            gamma=gamma,
            iteration_best_cost=float(min(costs)),
        ))
        logger.info("CE iteração %d/%d: γ = %.6g Hz, melhor = %s (%.6g Hz)",
                    iteration + 1, cfg.n_iter, gamma / (2 * np.pi),
                    incumbent.distribution.label(), incumbent.cost_hz)

    return CeResult(best=incumbent, q_final=q, best_per_iteration=best_per_iteration, history=history)
