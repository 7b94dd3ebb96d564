"""
Interface de linha de comando do GSP.

Subcomandos: validate, size, simulate, search, enumerate, sweep e plot.
Códigos de saída: 0 sucesso, 2 erro de configuração, 3 falha numérica,
4 orçamento da força bruta excedido.
"""

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Tuple

import pandas as pd

from src.config import APP_DESCRIPTION, APP_NAME, APP_VERSION, configure_logging
from src.models.grid import GridModel
from src.models.placement import Distribution
from src.models.run_config import RunConfig, SearchMethod
from src.models.search import CeConfig
from src.models.sizing import SizingResult
from src.utils.charts import ChartManager
from src.utils.combinatorics import complexity_ratio, enumerate_distributions, solution_count
from src.utils.dynamics import predict_steady_state, storage_energy_balance
from src.utils.errors import CombinatoricsOverflowError, ConfigError, GspError
from src.utils.evaluator import (
    EvaluationSettings,
    Evaluator,
    record_from_runs,
    simulate_distribution,
    storage_for,
)
from src.utils.grid_io import load_grid
from src.utils.network import build_admittance, node_layout, reduce_network
from src.utils.reports import CONVERGENCE_FILE, RANKING_FILE, ReportManager
from src.utils.run_config import load_run_config, p_trans_for, validate_scenarios
from src.utils.search import brute_force_search, ce_search
from src.utils.sizing import SizingManager

logger = logging.getLogger(__name__)

_TWO_PI = 2 * math.pi


# ============================================================================
# AUXILIARES
# ============================================================================

def _emit(data: dict) -> None:
    print(json.dumps(data, indent=4, ensure_ascii=False))


def _load(args) -> Tuple[RunConfig, GridModel]:
    """Lê configuração e rede aplicando as opções da linha de comando."""
    config = load_run_config(args.config)
    ce = config.ce
    if getattr(args, "seed", None) is not None:
        try:
            ce = replace(ce, seed=args.seed)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    config = config.override(
        method=SearchMethod(args.method) if getattr(args, "method", None) else None,
        workers=getattr(args, "workers", None),
        out_dir=Path(args.out) if getattr(args, "out", None) else None,
        ce=ce,
    )
    grid = load_grid(config.grid_path)
    validate_scenarios(grid, config.scenarios)
    return config, grid


def _settings(config: RunConfig) -> EvaluationSettings:
    return EvaluationSettings(
        dt=config.dt,
        coupling_pu=config.coupling_pu,
        storage_alpha=config.storage_alpha,
        aggregate=config.aggregate.value,
    )


def _total_bound(config: RunConfig, grid: GridModel) -> float:
    spec = SizingManager.spec_for_grid(grid, p_trans_for(config), config.delta_f_ss_max_hz,
                                       config.deviation_units.value)
    return SizingManager.total_storage_bound(spec)


def _ratio_or_none(n: int, n_s: int, cfg: CeConfig) -> Optional[float]:
    try:
        return complexity_ratio(n, n_s, cfg)
    except (CombinatoricsOverflowError, ValueError):
        return None


# ============================================================================
# SUBCOMANDOS
# ============================================================================

def cmd_validate(args) -> int:
    """Valida rede e configuração e resume dimensões, espaço de busca e capacidade."""
    config, grid = _load(args)
    layout = node_layout(grid)
    reduced = reduce_network(build_admittance(grid, None, config.coupling_pu), layout.n_g, layout.n_s)
    try:
        count = solution_count(grid.n, config.n_s)
    except CombinatoricsOverflowError:
        count = None
    sizing = SizingManager.size_for_grid(grid, p_trans_for(config), config.delta_f_ss_max_hz,
                                         config.n_s, config.deviation_units.value)
    _emit({
        "grid": str(config.grid_path),
        "n": grid.n,
        "n_G": grid.n_g,
        "n_L": grid.n_l,
        "lines": len(grid.lines),
        "u22_condition": reduced.condition,
        "n_S": config.n_s,
        "solutions": count,
        "complexity_ratio": _ratio_or_none(grid.n, config.n_s, config.ce),
        "scenarios": len(config.scenarios),
        "p_trans_MW": p_trans_for(config) / 1e6,
        "sizing": sizing.to_report(),
    })
    return 0


def cmd_size(args) -> int:
    """Imprime o limite de capacidade e a divisão por unidade."""
    config, grid = _load(args)
    n_s = args.n_s if args.n_s is not None else config.n_s
    sizing = SizingManager.size_for_grid(grid, p_trans_for(config), config.delta_f_ss_max_hz,
                                         n_s, config.deviation_units.value)
    _emit(sizing.to_report())
    return 0


def cmd_simulate(args) -> int:
    """Simula uma distribuição e grava trajetórias e métricas."""
    config, grid = _load(args)
    try:
        dist = Distribution.parse(args.distribution or "", grid.n)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid distribution {args.distribution!r}: {exc}") from None
    n_s = dist.total_units
    sizing = SizingManager.split_capacity(_total_bound(config, grid), n_s) if n_s else \
        SizingResult(_total_bound(config, grid), 0.0, 0, True)
    settings = _settings(config)
    runs = simulate_distribution(dist, grid, config.scenarios, sizing, settings)
    storage = storage_for(sizing, config.storage_alpha)

    reports = ReportManager(config.out_dir)
    scenario_reports = []
    for run in runs:
        suffix = run.scenario.name if len(runs) > 1 else None
        path = reports.write_trace(run.trace, dist, suffix)
        predicted = predict_steady_state(grid, dist, storage, run.scenario.total_step)
        delta_e, integral = storage_energy_balance(run.trace, config.charge_eff, config.discharge_eff)
        entry = {"name": run.scenario.name, "trace_csv_path": str(path.relative_to(reports.out_dir))}
        entry.update(run.metrics.to_dict())
        entry["f_ss_predicted_hz"] = (grid.omega0 + predicted) / _TWO_PI
        entry["storage"] = [
            {"bus": bus, "delta_E_MJ": float(de) / 1e6, "integral_P_MJ": float(ip) / 1e6}
            for bus, de, ip in zip(run.trace.layout.storage_buses, delta_e, integral)
        ]
        entry["warnings"] = list(run.trace.warnings) + list(run.metrics.warnings)
        scenario_reports.append(entry)

    record = record_from_runs(dist, runs)
    report = {
        "command": "simulate",
        "distribution": dist.as_mapping(),
        "sizing": sizing.to_report(),
        "f_nadir_hz": record.nadir_hz,
        "f_ss_hz": record.steady_state_hz,
        "f_coi_min_hz": record.coi_min_hz,
        "cost_hz": record.cost_hz,
        "worst_scenario": record.worst_scenario,
        "scenarios": scenario_reports,
    }
    reports.write_report(report)
    _emit(report)
    return 0


def cmd_search(args) -> int:
    """Executa força bruta e/ou CE e grava os relatórios."""
    config, grid = _load(args)
    sizing = SizingManager.split_capacity(_total_bound(config, grid), config.n_s)
    settings = _settings(config)
    reports = ReportManager(config.out_dir)
    report = {
        "command": "search",
        "config": config.to_dict(),
        "sizing": sizing.to_report(),
        "ranking_csv_path": None,
        "convergence_csv_path": None,
    }
    wall = {}
    brute = ce = None

    with Evaluator(grid, config.scenarios, sizing, settings, workers=config.workers) as evaluator:
        if config.method in (SearchMethod.BRUTE, SearchMethod.BOTH):
            start = time.perf_counter()
            brute = brute_force_search(grid, config.scenarios, sizing, config.n_s, config.budget,
                                       evaluator=evaluator, ce_config=config.ce)
            wall["brute_s"] = time.perf_counter() - start
            reports.write_ranking(brute.records)
            report["ranking_csv_path"] = RANKING_FILE
            report["brute"] = {"best": brute.best.to_dict(), "evaluations": len(brute.records)}
        if config.method in (SearchMethod.CE, SearchMethod.BOTH):
            start = time.perf_counter()
            ce = ce_search(grid, config.scenarios, sizing, config.n_s, config.ce, evaluator=evaluator)
            wall["ce_s"] = time.perf_counter() - start
            reports.write_convergence(ce)
            report["convergence_csv_path"] = CONVERGENCE_FILE
            report["ce"] = {
                "best": ce.best.to_dict(),
                "evaluations": config.ce.evaluations,
                "q_final": [float(v) for v in ce.q_final],
            }

        best = brute.best if brute is not None else ce.best
        runs = simulate_distribution(best.distribution, grid, config.scenarios, sizing, settings)

    worst = max(runs, key=lambda run: run.metrics.nadir_cost)
    trace_path = reports.write_trace(worst.trace, best.distribution)
    report["best"] = {
        "counts": best.distribution.as_mapping(),
        "cost_hz": best.cost_hz,
        "nadir_hz": best.nadir_hz,
        "coi_min_hz": best.coi_min_hz,
        "f_ss_hz": best.steady_state_hz,
        "trace_csv_path": str(trace_path.relative_to(reports.out_dir)),
    }
    ratio = _ratio_or_none(grid.n, config.n_s, config.ce)
    if brute is not None and ce is not None:
        report["comparison"] = {
            "brute_cost_hz": brute.best.cost_hz,
            "ce_cost_hz": ce.best.cost_hz,
            "same_best": brute.best.distribution == ce.best.distribution,
            "complexity_ratio": ratio,
            "recommended_method": "brute" if ratio is not None and ratio <= 1 else "ce",
        }
    reports.write_report(report)

    summary = dict(report["best"])
    summary["complexity_ratio"] = ratio
    summary["wall_time_s"] = wall
    _emit(summary)
    return 0


def cmd_enumerate(args) -> int:
    """Conta (e opcionalmente lista) as distribuições."""
    if args.config:
        config, grid = _load(args)
        n, n_s, ce = grid.n, config.n_s, config.ce
    else:
        if args.n is None:
            raise ConfigError("enumerate needs --config or --n")
        n, n_s, ce = args.n, args.n_s if args.n_s is not None else 1, CeConfig()
    if args.n_s is not None:
        n_s = args.n_s
    data = {"n": n, "n_S": n_s, "solutions": solution_count(n, n_s),
            "complexity_ratio": _ratio_or_none(n, n_s, ce)}
    if args.limit:
        listed = []
        for k, dist in enumerate(enumerate_distributions(n, n_s)):
            if k >= args.limit:
                break
            listed.append(dist.label())
        data["distributions"] = listed
    _emit(data)
    return 0


def cmd_sweep(args) -> int:
    """Uma unidade com toda a capacidade em cada barra, mais a referência sem armazenamento."""
    config, grid = _load(args)
    sizing = SizingManager.split_capacity(_total_bound(config, grid), 1)
    settings = _settings(config)
    with Evaluator(grid, config.scenarios, sizing, settings, workers=config.workers) as evaluator:
        baseline = evaluator.evaluate(Distribution.empty(grid.n))
        singles = [Distribution.from_mapping(grid.n, {bus: 1}) for bus in range(1, grid.n + 1)]
        records = evaluator.evaluate_many(singles)
    reports = ReportManager(config.out_dir)
    path = reports.write_sweep(baseline, records)
    report = {
        "command": "sweep",
        "sizing": sizing.to_report(),
        "baseline": baseline.to_dict(),
        "sweep_csv_path": path.name,
        "best_bus": min(records, key=lambda r: (r.cost, r.distribution.sort_key())).distribution.occupied_buses()[0],
    }
    reports.write_report(report)
    _emit(report)
    return 0


def cmd_plot(args) -> int:
    """Gera figuras HTML a partir de um diretório de saída."""
    if not args.out:
        raise ConfigError("plot needs --out pointing to a results directory")
    reports = ReportManager(Path(args.out))
    plots = reports.out_dir / "plots"
    written: List[str] = []
    if (reports.out_dir / RANKING_FILE).exists():
        fig = ChartManager.grafico_ranking(reports.read_ranking())
        written.append(str(ChartManager.salvar_html(fig, plots / "ranking.html")))
    if (reports.out_dir / CONVERGENCE_FILE).exists():
        convergence = reports.read_convergence()
        written.append(str(ChartManager.salvar_html(
            ChartManager.grafico_convergencia(convergence), plots / "convergence.html")))
        written.append(str(ChartManager.salvar_html(
            ChartManager.grafico_probabilidades(convergence), plots / "probabilities.html")))
    for trace_path in reports.list_traces():
        fig = ChartManager.grafico_frequencias(pd.read_csv(trace_path), title=trace_path.stem)
        written.append(str(ChartManager.salvar_html(fig, plots / f"trace-{trace_path.stem}.html")))
    if not written:
        raise ConfigError(f"nothing to plot in {reports.out_dir}")
    _emit({"plots": written})
    return 0


# ============================================================================
# ANALISADOR DE ARGUMENTOS
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsp", description=f"{APP_NAME}: {APP_DESCRIPTION}")
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="arquivo de configuração (texto ou JSON)")
        p.add_argument("--seed", type=int, help="semente da busca CE")
        p.add_argument("--workers", type=int, help="processos de avaliação")
        p.add_argument("--method", choices=[m.value for m in SearchMethod], help="método de busca")
        p.add_argument("--out", help="diretório de saída")
        return p

    common(sub.add_parser("validate", help="valida rede e configuração")).set_defaults(handler=cmd_validate)
    p = common(sub.add_parser("size", help="dimensiona o armazenamento"))
    p.add_argument("--n-s", dest="n_s", type=int, help="número de unidades")
    p.set_defaults(handler=cmd_size)
    p = common(sub.add_parser("simulate", help="simula uma distribuição"))
    p.add_argument("--distribution", default="", help='ex.: "7:2,10:3" (vazio = sem armazenamento)')
    p.set_defaults(handler=cmd_simulate)
    common(sub.add_parser("search", help="busca o melhor posicionamento")).set_defaults(handler=cmd_search)
    p = common(sub.add_parser("enumerate", help="conta as distribuições"), config_required=False)
    p.add_argument("--n", type=int, help="número de barras (sem --config)")
    p.add_argument("--n-s", dest="n_s", type=int, help="número de unidades")
    p.add_argument("--limit", type=int, default=0, help="lista as primeiras distribuições")
    p.set_defaults(handler=cmd_enumerate)
    common(sub.add_parser("sweep", help="uma unidade em cada barra")).set_defaults(handler=cmd_sweep)
    common(sub.add_parser("plot", help="gera gráficos HTML"), config_required=False).set_defaults(handler=cmd_plot)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", None) is not None and args.workers < 1:
        print("erro: --workers must be at least 1", file=sys.stderr)
        return ConfigError.exit_code
    try:
        return args.handler(args)
    except GspError as exc:
        logger.debug("Falha no comando %s", args.command, exc_info=True)
        print(f"erro: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"erro: {exc}", file=sys.stderr)
        return ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())
