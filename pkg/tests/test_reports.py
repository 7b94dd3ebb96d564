"""
Testes do diretório de saída e das tabelas exportadas.
"""

import numpy as np
import pytest

from src.models.placement import Distribution, EvaluationRecord
from src.utils.dynamics import simulate
from src.utils.reports import ReportManager, ranking_frame, sweep_frame, trace_frame
from tests.helpers import build_system, loss_scenario, unit_storage


@pytest.fixture
def storage_trace(six_bus):
    placement = Distribution.from_mapping(6, {5: 2})
    system = build_system(six_bus, placement, unit_storage(100.0))
    return placement, simulate(system, loss_scenario(6, 200.0, horizon=1.0))


def _record(mapping, cost):
    return EvaluationRecord(Distribution.from_mapping(3, mapping), cost, 49.8, 49.9, 49.85)


def test_trace_columns(storage_trace):
    _, trace = storage_trace
    frame = trace_frame(trace)
    assert list(frame.columns[:5]) == ["t", "omega_G_1", "omega_G_2", "omega_G_3", "omega_S_5"]
    assert {"E_S_5", "omega_coi", "P_S_5"} <= set(frame.columns)
    assert len(frame) == 1001
    assert frame["omega_G_1"].iloc[0] == pytest.approx(50.0)
    np.testing.assert_allclose(frame["omega_coi"], trace.coi_series / (2 * np.pi))


def test_ranking_orders_by_cost_then_canonical_order():
    records = [_record({3: 1}, 2.0), _record({2: 1}, 1.0), _record({1: 1}, 1.0)]
    frame = ranking_frame(records)
    assert list(frame["counts"]) == ["1:1", "2:1", "3:1"]
    assert list(frame["rank"]) == [1, 2, 3]
    assert frame["cost_hz"].iloc[2] == pytest.approx(2.0 / (2 * np.pi))


def test_sweep_starts_with_baseline():
    frame = sweep_frame(_record({}, 3.0), [_record({1: 1}, 1.0), _record({2: 1}, 2.0)])
    assert list(frame["bus"]) == ["none", 1, 2]


def test_output_files(tmp_path, storage_trace):
    placement, trace = storage_trace
    reports = ReportManager(tmp_path / "saida")
    single = reports.write_trace(trace, placement)
    named = reports.write_trace(trace, placement, "perda_6")
    assert single.name == f"{placement.digest()}.csv"
    assert named.name == f"{placement.digest()}-perda_6.csv"
    assert reports.list_traces() == sorted([single, named])

    reports.write_report({"command": "teste", "valor": 0.1})
    assert reports.read_report() == {"command": "teste", "valor": 0.1}
    assert (tmp_path / "saida" / "report.json").read_text(encoding="utf-8").endswith("}\n")


def test_csv_uses_fixed_precision(tmp_path):
    reports = ReportManager(tmp_path)
    path = reports.write_ranking([_record({1: 1}, 1.0 / 3)])
    text = path.read_text(encoding="utf-8")
    assert "\r" not in text
    assert f"{(1.0 / 3) / (2 * np.pi):.9g}" in text
    assert len(reports.read_ranking()) == 1


def test_repeated_writes_are_identical(tmp_path, storage_trace):
    placement, trace = storage_trace
    first = ReportManager(tmp_path / "a").write_trace(trace, placement).read_bytes()
    second = ReportManager(tmp_path / "b").write_trace(trace, placement).read_bytes()
    assert first == second
