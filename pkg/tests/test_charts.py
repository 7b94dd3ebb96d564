"""
Testes dos gráficos gerados a partir dos relatórios.
"""

import pandas as pd

from src.models.placement import Distribution
from src.utils.charts import ChartManager
from src.utils.dynamics import simulate
from src.utils.reports import trace_frame
from tests.helpers import build_system, loss_scenario


def _convergence():
    return pd.DataFrame({
        "iteration": [1, 2],
        "best_cost_hz": [0.30, 0.25],
        "iteration_best_cost_hz": [0.30, 0.26],
        "gamma_hz": [0.35, 0.28],
        "q_1": [0.4, 0.7],
        "q_2": [0.6, 0.3],
    })


def test_frequency_chart_has_one_line_per_series(six_bus):
    trace = trace_frame(simulate(build_system(six_bus), loss_scenario(6, 200.0, horizon=1.0)))
    fig = ChartManager.grafico_frequencias(trace)
    assert {t.name for t in fig.data} == {"omega_G_1", "omega_G_2", "omega_G_3", "omega_coi"}


def test_convergence_and_probability_charts():
    convergence = _convergence()
    assert len(ChartManager.grafico_convergencia(convergence).data) == 2
    bars = ChartManager.grafico_probabilidades(convergence).data[0]
    assert list(bars.x) == ["1", "2"]
    assert list(bars.y) == [0.7, 0.3]


def test_ranking_chart_limits_rows():
    ranking = pd.DataFrame({
        "counts": [Distribution.from_mapping(4, {b: 1}).label() for b in range(1, 5)],
        "f_nadir_hz": [49.7, 49.6, 49.5, 49.4],
        "f_coi_min_hz": [49.8, 49.8, 49.8, 49.8],
    })
    fig = ChartManager.grafico_ranking(ranking, top=3)
    assert fig.layout.title.text == "Melhores 3 distribuições"
    assert all(len(trace.x) == 3 for trace in fig.data)


def test_html_output(tmp_path):
    path = ChartManager.salvar_html(ChartManager.grafico_convergencia(_convergence()),
                                    tmp_path / "plots" / "convergencia.html")
    assert path.exists()
    assert 'id="convergencia"' in path.read_text(encoding="utf-8")
