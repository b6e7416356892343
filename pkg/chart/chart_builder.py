"""
Chart builder for simulation results.

Draws per-wire transition totals as bars and the final thermal proxy as a
line on a second axis, saved as a standalone HTML file.
"""
from __future__ import annotations

import base64
from pathlib import Path
from typing import Any, Dict, Optional

import plotly.graph_objects as go

from analytics.bus_simulator import SimulationReport
from config.settings import log


class ChartBuilderError(ValueError):
    pass


def build_chart(
    report: SimulationReport,
    output_path: Optional[str] = None,
    include_base64: bool = False,
) -> Dict[str, Any]:
    """
    Returns:
        Dict with 'chart_type', 'html_path', and optionally 'html_base64'
    """
    if report.steps == 0 or not report.transition_histogram:
        return {"chart_type": "none", "message": "No transitions to chart", "html_path": None}

    n = len(report.transition_histogram)
    if len(report.temp_proxy) != n:
        raise ChartBuilderError(f"histogram has {n} wires but thermal proxy has {len(report.temp_proxy)}")
    log("CHART", f"building wire chart: n={n}, steps={report.steps}, policy={report.policy}")

    fig = _build_wire_chart(report)
    if output_path is None:
        output_path = "last_chart.html"

    html_str = fig.to_html(include_plotlyjs="cdn", full_html=True)
    Path(output_path).write_text(html_str, encoding="utf-8")

    result = {
        "chart_type": "wire_transitions",
        "html_path": str(Path(output_path).absolute()),
    }
    if include_base64:
        result["html_base64"] = base64.b64encode(html_str.encode("utf-8")).decode("utf-8")
    return result


def _build_wire_chart(report: SimulationReport) -> go.Figure:
    wires = list(range(len(report.transition_histogram)))
    code = report.code
    title = (
        f"Transitions per wire: {code.get('construction', 'code')} "
        f"(n={code.get('n')}, t={code.get('t')}, w={code.get('w')}), "
        f"{report.steps} steps, policy {report.policy}"
    )
    fig = go.Figure()
    fig.add_trace(
        go.Bar(
            x=wires,
            y=report.transition_histogram,
            name="transitions",
            hovertemplate="<b>wire %{x}</b><br>transitions: %{y}<extra></extra>",
        )
    )
    fig.add_trace(
        go.Scatter(
            x=wires,
            y=report.temp_proxy,
            mode="lines+markers",
            name="thermal proxy",
            yaxis="y2",
            hovertemplate="<b>wire %{x}</b><br>proxy: %{y:.3f}<extra></extra>",
        )
    )
    fig.update_layout(
        title=title,
        xaxis_title="Wire",
        yaxis=dict(title="Transitions"),
        yaxis2=dict(title=report.thermal_model, overlaying="y", side="right"),
        hovermode="x unified",
        legend_title="Series",
    )
    return fig


__all__ = ["build_chart", "ChartBuilderError"]
