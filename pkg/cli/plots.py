"""
PyBound - Gráficos
Script matplotlib autônomo que relê a tabela CSV e, opcionalmente, HTML
interativo Plotly com as colunas principais de cada cenário.
"""

import logging
import math
from pathlib import Path
from typing import Any, List, Sequence

import plotly.graph_objects as go

logger = logging.getLogger(__name__)

# Paleta
COLORS = ['#10B981', '#EF4444', '#3B82F6', '#F59E0B', '#8B5CF6', '#6B7280']

PLOT_SCRIPT_TEMPLATE = '''"""Gráfico gerado pelo PyBound para o cenário {name}."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt

TABLE = Path(__file__).with_name({table!r})
X = {x!r}
COLUMNS = {columns!r}


def read_table(path):
    with open(path, encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def as_float(text):
    if text == "true":
        return 1.0
    if text == "false":
        return 0.0
    try:
        return float(text)
    except ValueError:
        return float("nan")


def main():
    rows = [row for row in read_table(TABLE) if row.get("ok", "true") == "true"]
    x = [as_float(row[X]) for row in rows]
    fig, axes = plt.subplots(len(COLUMNS), 1, sharex=True, figsize=(7, 2.4 * len(COLUMNS)),
                             squeeze=False)
    for ax, column in zip(axes[:, 0], COLUMNS):
        ax.plot(x, [as_float(row[column]) for row in rows], "o-")
        ax.set_ylabel(column)
        ax.grid(alpha=0.3)
    axes[-1, 0].set_xlabel(X)
    fig.suptitle({title!r})
    fig.tight_layout()
    fig.savefig(TABLE.with_suffix(".png"), dpi=150)


if __name__ == "__main__":
    main()
'''


def write_plot_script(filepath: str, name: str, table_name: str, x: str,
                      columns: Sequence[str], title: str) -> None:
    """Escreve o script matplotlib que relê a tabela ao lado dele."""
    path = Path(filepath)
    path.write_text(PLOT_SCRIPT_TEMPLATE.format(name=name, table=table_name, x=x,
                                                columns=list(columns), title=title),
                    encoding="utf-8")
    logger.info("[EXPORT] %s", path.name)


def _numeric(value: Any) -> float:
    if isinstance(value, bool):
        return float(value)
    if isinstance(value, (int, float)):
        return float(value)
    return math.nan


def build_figure(header: List[str], rows: List[List[Any]], x: str, columns: Sequence[str],
                 title: str) -> go.Figure:
    """Uma curva por coluna, em função da chave do eixo; linhas com falha são omitidas."""
    ok_index = header.index("ok") if "ok" in header else None
    kept = [row for row in rows if ok_index is None or row[ok_index]]
    xs = [_numeric(row[header.index(x)]) for row in kept]

    fig = go.Figure()
    for i, column in enumerate(columns):
        if column not in header:
            continue
        index = header.index(column)
        fig.add_trace(go.Scatter(
            x=xs,
            y=[_numeric(row[index]) for row in kept],
            mode='lines+markers',
            line=dict(color=COLORS[i % len(COLORS)], width=2),
            name=column,
            hovertemplate=f'<b>{x} = %{{x:.4g}}</b><br>{column}: %{{y:.6g}}<extra></extra>'
        ))

    fig.update_layout(
        title=dict(text=title, font=dict(size=15, color='#1F2937')),
        plot_bgcolor='#FFFFFF',
        paper_bgcolor='#FFFFFF',
        hovermode='x unified',
        legend=dict(bordercolor='#E5E7EB', borderwidth=1),
        xaxis=dict(
            title=dict(text=x, font=dict(size=13, color='#6B7280')),
            tickfont=dict(size=11, color='#6B7280'),
            gridcolor='#F3F4F6',
            linecolor='#E5E7EB',
        ),
        yaxis=dict(
            tickfont=dict(size=11, color='#6B7280'),
            gridcolor='#F3F4F6',
            linecolor='#E5E7EB',
        ),
    )
    return fig


def write_html(filepath: str, name: str, header: List[str], rows: List[List[Any]], x: str,
               columns: Sequence[str], title: str) -> None:
    """Exporta a figura interativa em HTML (plotly.js via CDN)."""
    fig = build_figure(header, rows, x, columns, title)
    html = fig.to_html(
        include_plotlyjs='cdn',
        full_html=True,
        config={
            'displayModeBar': True,
            'modeBarButtonsToRemove': [
                'select2d', 'lasso2d', 'autoScale2d',
                'hoverClosestCartesian', 'hoverCompareCartesian',
                'toggleSpikelines'
            ],
            'displaylogo': False,
            'responsive': True,
            'toImageButtonOptions': {
                'format': 'png',
                'filename': f'pybound_{name}',
                'height': 600,
                'width': 1200,
                'scale': 2
            }
        }
    )
    path = Path(filepath)
    path.write_text(html, encoding="utf-8")
    logger.info("[EXPORT] %s", path.name)
