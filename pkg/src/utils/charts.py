"""
Utilitários para criação de gráficos a partir dos relatórios.
"""

from pathlib import Path

import pandas as pd
import plotly.express as px
import plotly.graph_objects as go
import plotly.io as pio


class ChartManager:
    """Gerenciador de gráficos e visualizações."""

    @staticmethod
    def grafico_frequencias(trace: pd.DataFrame, title: str = "Frequência dos geradores") -> go.Figure:
        """Frequência de cada gerador e do centro de inércia ao longo do tempo."""
        columns = [c for c in trace.columns if c.startswith("omega_G_")]
        if "omega_coi" in trace.columns:
            columns.append("omega_coi")
        df = trace.melt(id_vars="t", value_vars=columns, var_name="Série", value_name="Frequência (Hz)")

        fig = px.line(
            df,
            x="t",
            y="Frequência (Hz)",
            color="Série",
            title=title,
            labels={"t": "Tempo (s)"},
        )

        fig.update_layout(
            hovermode="x unified",
            template="plotly_white",
        )

        return fig

    @staticmethod
    def grafico_convergencia(convergence: pd.DataFrame) -> go.Figure:
        """Melhor custo acumulado e melhor custo da iteração na busca CE."""
        df = convergence.melt(
            id_vars="iteration",
            value_vars=["best_cost_hz", "iteration_best_cost_hz"],
            var_name="Série",
            value_name="Custo (Hz)",
        )

        fig = px.line(
            df,
            x="iteration",
            y="Custo (Hz)",
            color="Série",
            markers=True,
            title="Convergência da busca Cross-Entropy",
            labels={"iteration": "Iteração"},
        )

        fig.update_layout(template="plotly_white")

        return fig

    @staticmethod
    def grafico_probabilidades(convergence: pd.DataFrame) -> go.Figure:
        """Vetor q final por barra."""
        columns = [c for c in convergence.columns if c.startswith("q_")]
        last = convergence.iloc[-1]
        df = pd.DataFrame({
            "Barra": [c[2:] for c in columns],
            "Probabilidade": [float(last[c]) for c in columns],
        })

        fig = px.bar(
            df,
            x="Barra",
            y="Probabilidade",
            title="Probabilidade final por barra",
            color="Probabilidade",
            color_continuous_scale="Blues",
        )

        fig.update_layout(showlegend=False, template="plotly_white")

        return fig

    @staticmethod
    def grafico_ranking(ranking: pd.DataFrame, top: int = 20) -> go.Figure:
        """Nadir e mínimo do centro de inércia das melhores distribuições."""
        df = ranking.head(top).melt(
            id_vars="counts",
            value_vars=["f_nadir_hz", "f_coi_min_hz"],
            var_name="Métrica",
            value_name="Frequência (Hz)",
        )

        fig = px.bar(
            df,
            x="counts",
            y="Frequência (Hz)",
            color="Métrica",
            barmode="group",
            title=f"Melhores {min(top, len(ranking))} distribuições",
            labels={"counts": "Distribuição (barra:unidades)"},
        )

        fig.update_layout(template="plotly_white")

        return fig

    @staticmethod
    def salvar_html(fig: go.Figure, path: Path) -> Path:
        """Grava a figura em HTML com identificador fixo (saída reproduzível)."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        pio.write_html(fig, file=str(path), include_plotlyjs="cdn", div_id=path.stem)
        return path
