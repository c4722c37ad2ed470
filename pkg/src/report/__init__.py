from .tables import (
    convergence_table,
    curvature_table,
    edge_length_table,
    format_table,
    validity_table,
)
from .charts import render_convergence, render_degeneration_scan, write_figure

__all__ = [
    'convergence_table',
    'curvature_table',
    'edge_length_table',
    'format_table',
    'validity_table',
    'render_convergence',
    'render_degeneration_scan',
    'write_figure',
]
