"""
Plotly figures written as standalone HTML files.
"""
from pathlib import Path
from typing import Union

import pandas as pd
import plotly.graph_objects as go


def render_degeneration_scan(scan: pd.DataFrame, subset_label: str) -> go.Figure:
    """
    Sum of curvatures over J against the degeneration limit as the radii in J shrink.

    Args:
        scan: DataFrame with eps, sum_curvature and limit columns
        subset_label: Label of J for the title

    Returns:
        Plotly Figure with a log-scaled eps axis
    """
    fig = go.Figure()
    fig.add_trace(go.Scatter(
        x=scan["eps"],
        y=scan["sum_curvature"],
        mode='lines+markers',
        name="Σ K over J",
        line=dict(color='#1f77b4', width=2),
    ))
    fig.add_trace(go.Scatter(
        x=scan["eps"],
        y=scan["limit"],
        mode='lines',
        name="degeneration limit",
        line=dict(color='#d62728', width=2, dash='dash'),
    ))
    fig.update_layout(
        title=f"Curvature sum as the radii of J = {{{subset_label}}} shrink",
        xaxis_title="radius ε",
        yaxis_title="curvature",
        template="plotly_white",
    )
    fig.update_xaxes(type="log", autorange="reversed")
    return fig


def render_convergence(log: pd.DataFrame) -> go.Figure:
    """Residual per Newton iteration on a log axis."""
    fig = go.Figure()
    fig.add_trace(go.Scatter(
        x=log["iteration"],
        y=log["residual"],
        mode='lines+markers',
        name="max |K - target|",
        line=dict(color='#2ca02c', width=2),
    ))
    fig.update_layout(
        title="Newton solver convergence",
        xaxis_title="iteration",
        yaxis_title="residual",
        template="plotly_white",
    )
    fig.update_yaxes(type="log")
    return fig


def write_figure(fig: go.Figure, target_path: Union[str, Path]) -> Path:
    path = Path(target_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.write_html(str(path), include_plotlyjs="cdn")
    return path
