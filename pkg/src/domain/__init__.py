# Inversive distance circle packings: domain layer
from .models import (
    Background,
    ComparisonTolerance,
    PartitionAB,
    RadiusVector,
    SolverOptions,
    Triangulation,
    VertexSubset,
    WeightedSurface,
)
from .complex import build_triangulation, double, make_surface
from .geometry import degeneration_limit, metric_report, require_packing_metric

__all__ = [
    'Background',
    'ComparisonTolerance',
    'PartitionAB',
    'RadiusVector',
    'SolverOptions',
    'Triangulation',
    'VertexSubset',
    'WeightedSurface',
    'build_triangulation',
    'double',
    'make_surface',
    'degeneration_limit',
    'metric_report',
    'require_packing_metric',
]
