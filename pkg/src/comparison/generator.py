"""
Solver-driven comparison pairs: raise the fixed radii and the target curvatures
of a known metric and solve for the metric that realises them.
"""
import logging
from typing import Mapping

from src.domain.errors import CirclePackingError
from src.domain.geometry import require_packing_metric
from src.domain.models import DEFAULT_SOLVER_OPTIONS, PartitionAB, RadiusVector, SolverOptions, WeightedSurface
from src.variational.solver import solve_prescribed_curvature

logger = logging.getLogger(__name__)


def generate_comparison_pair(
    surface: WeightedSurface,
    partition: PartitionAB,
    r: RadiusVector,
    radius_bumps: Mapping[int, float],
    curvature_bumps: Mapping[int, float],
    options: SolverOptions = DEFAULT_SOLVER_OPTIONS,
) -> RadiusVector:
    """
    Solve for R with R|_B = r|_B + radius_bumps and K_R|_A = K_r|_A + curvature_bumps.

    Missing bump entries count as zero.

    Raises:
        CirclePackingError: a bump is negative or names a vertex outside its part
        NotAPackingMetricError: r is not a packing metric
        NotConcaveRegionError, InfeasibleTargetError, MaxIterationsError: from the solver
    """
    partition.check_covers(surface.vertex_count)
    _check_bumps(radius_bumps, partition.b.members, "radius")
    _check_bumps(curvature_bumps, partition.a.members, "curvature")

    curvature = require_packing_metric(surface, r, "r").curvature
    fixed = {b: r[b] + float(radius_bumps.get(b, 0.0)) for b in partition.b}
    target = {a: float(curvature[a]) + float(curvature_bumps.get(a, 0.0)) for a in partition.a}
    outcome = solve_prescribed_curvature(surface, fixed, target, options, initial=r)
    logger.debug("Comparison pair solved in %d iterations", outcome.iterations)
    return outcome.radii


def _check_bumps(bumps: Mapping[int, float], allowed, kind: str) -> None:
    for vertex, value in bumps.items():
        if vertex not in allowed:
            raise CirclePackingError(f"A {kind} bump is given for vertex {vertex}, which is not in its part")
        if value < 0:
            raise CirclePackingError(f"The {kind} bump at vertex {vertex} must be nonnegative, got {value}")
