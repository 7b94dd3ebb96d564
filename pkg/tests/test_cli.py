"""
Testes da linha de comando: subcomandos, arquivos gerados e códigos de saída.
"""

import json
import shutil

import pandas as pd
import pytest

from src.cli import main
from src.config import DATA_DIR
from src.utils.reports import CONVERGENCE_FILE, RANKING_FILE, REPORT_FILE
from tests.helpers import GOLDEN_CONVERGENCE, run_golden_search


def write_config(tmp_path, grid="six_bus.grid", n_s=2, method="both", dt=0.001, horizon=5.0,
                 scenarios=("perda_6 6 200 0.0",), extra="", name="run.cfg"):
    """Configuração em texto com a rede apontando para os dados do pacote."""
    lines = [
        "[run]",
        f"grid {DATA_DIR / grid}",
        f"n_s {n_s}",
        f"method {method}",
        f"dt {dt}",
        f"horizon {horizon}",
        extra,
        "[sizing]",
        "delta_f_ss_max_hz 0.2",
        "[ce]",
        "n_iter 4",
        "samples 10",
        "elite_fraction 0.2",
        "smoothing 0.5",
        "seed 0",
        "[scenarios]",
        *scenarios,
    ]
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ============================================================================
# CÓDIGOS DE SAÍDA
# ============================================================================

def test_missing_grid_is_a_config_error(tmp_path, capsys):
    config = write_config(tmp_path, grid="nao_existe.grid")
    code, _, err = run(capsys, "validate", "--config", config)
    assert code == 2
    assert "grid file not found" in err


def test_broken_grid_is_a_config_error(tmp_path, capsys):
    grid = tmp_path / "quebrada.grid"
    grid.write_text("[buses]\n1 generator -1000\n2 load\n[lines]\n1 2 5\n", encoding="utf-8")
    config = tmp_path / "run.cfg"
    config.write_text(f"[run]\ngrid {grid}\n[scenarios]\nx 1 10\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", "--config", config)
    assert code == 2
    assert err.startswith("erro:")


def test_missing_config_file(tmp_path, capsys):
    code, _, err = run(capsys, "validate", "--config", tmp_path / "nada.cfg")
    assert code == 2
    assert "cannot read config file" in err


def test_no_transient_events(tmp_path, capsys):
    config = write_config(tmp_path, scenarios=())
    code, _, err = run(capsys, "search", "--config", config, "--out", tmp_path / "out")
    assert code == 2
    assert "no transient events configured" in err


def test_event_on_generator_bus(tmp_path, capsys):
    config = write_config(tmp_path, scenarios=("gerador 1 100 0.0",))
    code, _, err = run(capsys, "validate", "--config", config)
    assert code == 2
    assert "generator bus 1" in err


def test_budget_exceeded(tmp_path, capsys):
    config = write_config(tmp_path, grid="grid20.grid", n_s=5, method="brute",
                          scenarios=("perda_10 10 1100 0.0",), extra="budget 1000")
    code, _, err = run(capsys, "search", "--config", config, "--out", tmp_path / "out")
    assert code == 4
    assert "42504" in err
    assert "method=ce" in err


def test_numerical_failure(tmp_path, capsys):
    """Passo de 2 s: RK4 instável nos modos eletromecânicos."""
    config = write_config(tmp_path, dt=2.0, horizon=20.0)
    code, _, err = run(capsys, "simulate", "--config", config, "--distribution", "",
                       "--out", tmp_path / "out")
    assert code == 3
    assert "diverged" in err


def test_invalid_workers(tmp_path, capsys):
    config = write_config(tmp_path)
    code, _, _ = run(capsys, "search", "--config", config, "--workers", "0")
    assert code == 2


def test_invalid_distribution(tmp_path, capsys):
    config = write_config(tmp_path)
    code, _, err = run(capsys, "simulate", "--config", config, "--distribution", "9:2",
                       "--out", tmp_path / "out")
    assert code == 2
    assert "invalid distribution" in err


# ============================================================================
# SUBCOMANDOS
# ============================================================================

def test_validate_bundled_grid20(capsys):
    code, out, _ = run(capsys, "validate", "--config", DATA_DIR / "grid20.json")
    data = json.loads(out)
    assert code == 0
    assert data["n"] == 20
    assert data["n_G"] == 8
    assert data["solutions"] == 42504
    assert round(data["complexity_ratio"], 2) == 14.17
    assert data["sizing"]["feasible"] is True


def test_size_prints_capacity(tmp_path, capsys):
    config = write_config(tmp_path)
    code, out, _ = run(capsys, "size", "--config", config, "--n-s", 4)
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"total_MWs", "per_unit_MWs", "n_S", "feasible"}
    assert data["n_S"] == 4
    assert data["per_unit_MWs"] == pytest.approx(data["total_MWs"] / 4)


def test_enumerate_without_config(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", 3, "--n-s", 2, "--limit", 4)
    data = json.loads(out)
    assert code == 0
    assert data["solutions"] == 6
    assert data["distributions"] == ["1:2", "1:1 2:1", "1:1 3:1", "2:2"]


def test_enumerate_needs_a_size(capsys):
    code, _, err = run(capsys, "enumerate")
    assert code == 2
    assert "--n" in err


def test_simulate_writes_traces(tmp_path, capsys):
    config = write_config(tmp_path, scenarios=("perda_6 6 200 0.0", "perda_4 4 100 0.0"))
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "simulate", "--config", config, "--distribution", "5:1,6:1",
                       "--out", out_dir)
    report = json.loads(out)
    assert code == 0
    assert report["worst_scenario"] == "perda_6"
    assert len(report["scenarios"]) == 2
    for entry in report["scenarios"]:
        trace = pd.read_csv(out_dir / entry["trace_csv_path"])
        assert entry["trace_csv_path"].endswith(f"-{entry['name']}.csv")
        assert {"t", "omega_coi", "E_S_5", "P_S_6"} <= set(trace.columns)
        assert [s["bus"] for s in entry["storage"]] == [5, 6]
    assert (out_dir / REPORT_FILE).exists()


def test_search_both_writes_outputs(tmp_path, capsys):
    config = write_config(tmp_path)
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "search", "--config", config, "--out", out_dir)
    summary = json.loads(out)
    assert code == 0
    assert "brute_s" in summary["wall_time_s"]

    report = json.loads((out_dir / REPORT_FILE).read_text(encoding="utf-8"))
    assert report["ranking_csv_path"] == RANKING_FILE
    assert report["convergence_csv_path"] == CONVERGENCE_FILE
    assert "wall_time_s" not in report
    assert report["comparison"]["ce_cost_hz"] >= report["comparison"]["brute_cost_hz"] * (1 - 1e-9)

    ranking = pd.read_csv(out_dir / RANKING_FILE)
    assert len(ranking) == 21
    assert list(ranking["rank"]) == list(range(1, 22))
    assert ranking["cost_hz"].is_monotonic_increasing
    assert ranking["cost_hz"].iloc[0] == pytest.approx(report["best"]["cost_hz"])

    convergence = pd.read_csv(out_dir / CONVERGENCE_FILE)
    assert len(convergence) == 4
    assert convergence["best_cost_hz"].is_monotonic_decreasing
    assert (out_dir / report["best"]["trace_csv_path"]).exists()


def test_search_is_reproducible(tmp_path, capsys):
    """Execuções repetidas, com um ou dois processos, geram os mesmos bytes."""
    config = write_config(tmp_path)
    outputs = []
    for index, workers in enumerate([1, 1, 2]):
        out_dir = tmp_path / f"out{index}"
        code, _, _ = run(capsys, "search", "--config", config, "--workers", workers, "--out", out_dir)
        assert code == 0
        outputs.append({
            name: (out_dir / name).read_bytes()
            for name in (REPORT_FILE, RANKING_FILE, CONVERGENCE_FILE)
        })
    assert outputs[0] == outputs[1] == outputs[2]


def test_seed_override_changes_only_ce(tmp_path, capsys):
    config = write_config(tmp_path)
    reports = []
    for seed in (0, 7):
        out_dir = tmp_path / f"seed{seed}"
        assert run(capsys, "search", "--config", config, "--seed", seed, "--out", out_dir)[0] == 0
        reports.append(json.loads((out_dir / REPORT_FILE).read_text(encoding="utf-8")))
    assert reports[0]["config"]["ce"]["seed"] == 0
    assert reports[1]["config"]["ce"]["seed"] == 7
    assert reports[0]["brute"] == reports[1]["brute"]


def test_sweep_and_plot(tmp_path, capsys):
    config = write_config(tmp_path)
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "sweep", "--config", config, "--out", out_dir)
    report = json.loads(out)
    assert code == 0
    assert 1 <= report["best_bus"] <= 6
    sweep = pd.read_csv(out_dir / report["sweep_csv_path"])
    assert len(sweep) == 7
    assert sweep["bus"].iloc[0] == "none"
    assert (sweep["cost_hz"].iloc[1:] < sweep["cost_hz"].iloc[0]).all()

    assert run(capsys, "search", "--config", config, "--out", out_dir)[0] == 0
    code, out, _ = run(capsys, "plot", "--out", out_dir)
    plots = json.loads(out)["plots"]
    assert code == 0
    assert any(p.endswith("ranking.html") for p in plots)
    assert any(p.endswith("probabilities.html") for p in plots)


def test_plot_on_empty_directory(tmp_path, capsys):
    code, _, err = run(capsys, "plot", "--out", tmp_path)
    assert code == 2
    assert "nothing to plot" in err


# ============================================================================
# ARQUIVO DE REFERÊNCIA
# ============================================================================

def test_ce_convergence_matches_golden_file(tmp_path, capsys):
    """A CE com semente fixa reproduz o convergence.csv congelado em tests/data."""
    produced = run_golden_search(tmp_path / "ce")
    if not GOLDEN_CONVERGENCE.exists():
        GOLDEN_CONVERGENCE.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(produced, GOLDEN_CONVERGENCE)
        produced = run_golden_search(tmp_path / "ce_again")
    capsys.readouterr()

    expected = pd.read_csv(GOLDEN_CONVERGENCE, dtype={"best_counts": str})
    actual = pd.read_csv(produced, dtype={"best_counts": str})
    assert list(actual.columns) == list(expected.columns)
    assert actual["best_counts"].tolist() == expected["best_counts"].tolist()
    pd.testing.assert_frame_equal(actual, expected, check_exact=False, rtol=1e-7, atol=1e-12)
