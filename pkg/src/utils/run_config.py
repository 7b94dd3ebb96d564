"""
Leitura da configuração de execução.

Formato texto (mesma família do arquivo de rede)::

    [run]
    grid six_bus.grid
    n_s 2
    method both

    [sizing]
    delta_f_ss_max_hz 0.2

    [ce]
    n_iter 15
    samples 40

    [scenarios]
    # name bus MW onset_s
    perda_6 6 200 0.0

Linhas de cenário com o mesmo nome formam um único cenário. Um arquivo
JSON com as seções ``run``, ``sizing``, ``ce`` e a lista ``scenarios``
também é aceito. O caminho da rede é relativo ao arquivo de configuração.
"""

import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.models.grid import GridModel
from src.models.run_config import AggregateMode, DeviationUnits, RunConfig, SearchMethod
from src.models.search import CeConfig
from src.models.simulation import TransientEvent, TransientScenario
from src.utils.errors import ConfigError, FileFormatError
from src.utils.validators import Validators

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\S+")

# Chaves aceitas por seção e seus conversores
_KEYS = {
    "run": {"grid", "n_s", "method", "dt", "horizon", "coupling_pu", "deviation_units",
            "aggregate", "workers", "budget", "out"},
    "sizing": {"delta_f_ss_max_hz", "p_trans_mw", "storage_alpha", "charge_eff", "discharge_eff"},
    "ce": {"n_iter", "samples", "elite_fraction", "smoothing", "seed"},
}


def _as_int(value: Any, key: str) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"{key} must be an integer")
    if isinstance(value, float) and not value.is_integer():
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def _as_float(value: Any, key: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"{key} must be a number")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {value!r}") from None


def _positive(value: Any, key: str) -> float:
    number = _as_float(value, key)
    if not Validators.is_positive(number):
        raise ConfigError(f"non-positive parameter {key} = {value}")
    return number


def _enum(enum_cls, value: Any, key: str):
    try:
        return enum_cls(str(value).lower())
    except ValueError:
        options = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"{key} must be one of {options}, got {value!r}") from None


# ============================================================================
# LEITURA DOS FORMATOS
# ============================================================================

def _parse_text(text: str, source: Optional[str]) -> Tuple[Dict[str, Dict[str, Any]], List[dict]]:
    sections: Dict[str, Dict[str, Any]] = {name: {} for name in _KEYS}
    scenarios: List[dict] = []
    section = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(content)]
        if not tokens:
            continue
        head, column = tokens[0]
        if head.startswith("["):
            name = head.strip("[]").lower()
            if len(tokens) != 1 or not head.endswith("]") or name not in list(_KEYS) + ["scenarios"]:
                raise FileFormatError(f"unknown or malformed section {content.strip()!r}",
                                      number, column, source)
            section = name
            continue
        if section is None:
            raise FileFormatError("record outside of any section", number, column, source)
        if section == "scenarios":
            if len(tokens) not in (3, 4):
                raise FileFormatError("scenario record must be 'name bus MW [onset_s]'",
                                      number, column, source)
            values = [t for t, _ in tokens]
            scenarios.append({"name": values[0], "bus": values[1], "mw": values[2],
                              "onset": values[3] if len(values) == 4 else 0.0, "line": number})
            continue
        if len(tokens) != 2:
            raise FileFormatError("record must be 'key value'", number, column, source)
        if head not in _KEYS[section]:
            raise FileFormatError(f"unknown key {head!r} in [{section}]", number, column, source)
        if head in sections[section]:
            raise FileFormatError(f"duplicate key {head!r} in [{section}]", number, column, source)
        sections[section][head] = tokens[1][0]
    return sections, scenarios


def _parse_json(text: str, source: Optional[str]) -> Tuple[Dict[str, Dict[str, Any]], List[dict]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno, source) from None
    if not isinstance(data, dict):
        raise FileFormatError("JSON config must be an object", source=source)
    sections: Dict[str, Dict[str, Any]] = {}
    for name, keys in _KEYS.items():
        block = data.get(name, {})
        if not isinstance(block, dict):
            raise FileFormatError(f"section {name!r} must be an object", source=source)
        unknown = set(block) - keys
        if unknown:
            raise FileFormatError(f"unknown keys in {name!r}: {sorted(unknown)}", source=source)
        sections[name] = dict(block)
    scenarios = data.get("scenarios", [])
    if not isinstance(scenarios, list) or not all(isinstance(s, dict) for s in scenarios):
        raise FileFormatError("'scenarios' must be a list of objects", source=source)
    return sections, scenarios


# ============================================================================
# MONTAGEM DA CONFIGURAÇÃO
# ============================================================================

def _build(sections: Dict[str, Dict[str, Any]], scenario_rows: List[dict],
           base_dir: Path, source: Optional[Path]) -> RunConfig:
    run, sizing, ce = sections["run"], sections["sizing"], sections["ce"]
    defaults = RunConfig(grid_path=Path("."))
    if "grid" not in run:
        raise ConfigError("missing 'grid' in [run]")
    grid_path = Path(str(run["grid"]))
    if not grid_path.is_absolute():
        grid_path = base_dir / grid_path
    if not grid_path.exists():
        raise ConfigError(f"grid file not found: {grid_path}")

    horizon = _positive(run["horizon"], "horizon") if "horizon" in run else defaults.horizon
    default_ce = defaults.ce
    try:
        ce_config = CeConfig(
            n_iter=_as_int(ce.get("n_iter", default_ce.n_iter), "n_iter"),
            samples=_as_int(ce.get("samples", default_ce.samples), "samples"),
            elite_fraction=_as_float(ce.get("elite_fraction", default_ce.elite_fraction), "elite_fraction"),
            smoothing=_as_float(ce.get("smoothing", default_ce.smoothing), "smoothing"),
            seed=_as_int(ce.get("seed", default_ce.seed), "seed"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    scenarios = _build_scenarios(scenario_rows, horizon)

    n_s = _as_int(run.get("n_s", defaults.n_s), "n_s")
    if n_s < 0:
        raise ConfigError(f"n_s must be non-negative, got {n_s}")
    workers = _as_int(run.get("workers", defaults.workers), "workers")
    budget = _as_int(run.get("budget", defaults.budget), "budget")
    if workers < 1 or budget < 1:
        raise ConfigError("workers and budget must be at least 1")
    p_trans = sizing.get("p_trans_mw")
    if p_trans is not None:
        p_trans = _as_float(p_trans, "p_trans_mw")
        if p_trans < 0:
            raise ConfigError(f"p_trans_mw must be non-negative, got {p_trans}")
    charge_eff = _as_float(sizing.get("charge_eff", defaults.charge_eff), "charge_eff")
    discharge_eff = _as_float(sizing.get("discharge_eff", defaults.discharge_eff), "discharge_eff")
    if not (Validators.is_fraction(charge_eff) and Validators.is_fraction(discharge_eff)):
        raise ConfigError("efficiencies must lie in (0, 1]")

    return RunConfig(
        grid_path=grid_path,
        scenarios=scenarios,
        delta_f_ss_max_hz=_positive(sizing.get("delta_f_ss_max_hz", defaults.delta_f_ss_max_hz),
                                    "delta_f_ss_max_hz"),
        p_trans_mw=p_trans,
        n_s=n_s,
        method=_enum(SearchMethod, run.get("method", defaults.method.value), "method"),
        ce=ce_config,
        dt=_positive(run.get("dt", defaults.dt), "dt"),
        horizon=horizon,
        coupling_pu=_positive(run.get("coupling_pu", defaults.coupling_pu), "coupling_pu"),
        deviation_units=_enum(DeviationUnits, run.get("deviation_units", defaults.deviation_units.value),
                              "deviation_units"),
        aggregate=_enum(AggregateMode, run.get("aggregate", defaults.aggregate.value), "aggregate"),
        workers=workers,
        budget=budget,
        out_dir=Path(str(run["out"])) if "out" in run else defaults.out_dir,
        storage_alpha=_positive(sizing.get("storage_alpha", defaults.storage_alpha), "storage_alpha"),
        charge_eff=charge_eff,
        discharge_eff=discharge_eff,
        source=source,
    )


def _build_scenarios(rows: List[dict], horizon: float) -> Tuple[TransientScenario, ...]:
    grouped: Dict[str, List[TransientEvent]] = {}
    for row in rows:
        where = f" (line {row['line']})" if "line" in row else ""
        try:
            name = str(row["name"])
            event = TransientEvent(
                bus=_as_int(row["bus"], "scenario bus"),
                delta_p=_as_float(row["mw"], "scenario MW") * 1e6,
                onset=_as_float(row.get("onset", 0.0), "scenario onset"),
            )
        except KeyError as exc:
            raise ConfigError(f"scenario entry missing {exc.args[0]!r}{where}") from None
        except ConfigError as exc:
            raise ConfigError(f"{exc}{where}") from None
        grouped.setdefault(name, []).append(event)
    scenarios = []
    for name, events in grouped.items():
        try:
            scenarios.append(TransientScenario(tuple(events), horizon, name))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return tuple(scenarios)


def parse_run_config(text: str, source: Optional[Union[str, Path]] = None,
                     base_dir: Optional[Path] = None) -> RunConfig:
    """
    Lê uma configuração (texto ou JSON).

    Args:
        text: Conteúdo do arquivo
        source: Caminho do arquivo (usado nas mensagens e como base do caminho da rede)
        base_dir: Diretório base explícito

    Returns:
        RunConfig validada
    """
    source_path = Path(source) if source is not None else None
    label = str(source_path) if source_path else None
    if (source_path and source_path.suffix.lower() == ".json") or text.lstrip().startswith("{"):
        sections, scenarios = _parse_json(text, label)
    else:
        sections, scenarios = _parse_text(text, label)
    if base_dir is None:
        base_dir = source_path.parent if source_path else Path.cwd()
    return _build(sections, scenarios, base_dir, source_path)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Lê a configuração do disco."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    config = parse_run_config(text, path)
    logger.info("Configuração lida de %s: %d cenário(s), n_S = %d", path, len(config.scenarios), config.n_s)
    return config


def validate_scenarios(grid: GridModel, scenarios) -> None:
    """Verifica se todos os eventos ocorrem em barras de carga da rede."""
    loads = set(grid.load_buses)
    for scenario in scenarios:
        for event in scenario.events:
            if event.bus not in loads:
                kind = "generator bus" if 1 <= event.bus <= grid.n else "unknown bus"
                raise ConfigError(
                    f"scenario {scenario.name!r}: event at {kind} {event.bus}; events must hit load buses"
                )


def p_trans_for(config: RunConfig) -> float:
    """Perda usada no dimensionamento (W): valor explícito ou pior cenário."""
    if config.p_trans_mw is not None:
        return config.p_trans_mw * 1e6
    if not config.scenarios:
        return 0.0
    if config.aggregate is AggregateMode.SINGLE:
        return max(0.0, sum(s.total_step for s in config.scenarios))
    return max(0.0, max(abs(s.total_step) for s in config.scenarios))
