"""
Tabular views of metrics, scans and solver runs.

Vertex and edge labels in these tables are 1-based, matching the command line.
"""
from typing import Mapping

import pandas as pd

from src.domain.geometry import metric_report
from src.domain.models import MetricReport, RadiusVector, SolveOutcome, WeightedSurface

DECIMALS = 5


def vertex_label(vertex: int) -> str:
    return str(vertex + 1)


def edge_label(edge) -> str:
    return "-".join(vertex_label(v) for v in edge)


def edge_length_table(surface: WeightedSurface, metrics: Mapping[str, RadiusVector]) -> pd.DataFrame:
    """One row per edge, one `l_<name>` column per metric."""
    df = pd.DataFrame({"edge": [edge_label(edge) for edge in surface.triangulation.edges]})
    for name, radii in metrics.items():
        lengths = metric_report(surface, radii).edge_lengths
        df[f"l_{name}"] = [lengths[edge] for edge in surface.triangulation.edges]
    return df


def curvature_table(surface: WeightedSurface, metrics: Mapping[str, RadiusVector]) -> pd.DataFrame:
    """One row per vertex, one `K_<name>` column per metric (NaN next to degenerate faces)."""
    df = pd.DataFrame({"vertex": [vertex_label(v) for v in surface.triangulation.vertices]})
    for name, radii in metrics.items():
        df[f"K_{name}"] = metric_report(surface, radii).curvature
    return df


def validity_table(report: MetricReport) -> pd.DataFrame:
    return pd.DataFrame({
        "face": [edge_label(face) for face in report.face_valid],
        "valid": list(report.face_valid.values()),
    })


def convergence_table(outcome: SolveOutcome) -> pd.DataFrame:
    """Per-step residual before the step, accepted step size and energy gain."""
    rows = [
        {
            "iteration": step.iteration,
            "residual": step.residual,
            "step_size": step.step_size,
            "energy_gain": step.energy_gain,
        }
        for step in outcome.history
    ]
    return pd.DataFrame(rows, columns=["iteration", "residual", "step_size", "energy_gain"])


def format_table(df: pd.DataFrame, decimals: int = DECIMALS) -> str:
    return df.to_string(index=False, float_format=lambda x: f"{x:.{decimals}f}")
