"""
Discrete Schwarz-Pick comparison checker.

Hypotheses: R >= r on B and K_R >= K_r on A. Conclusion: R >= r everywhere.
"""
import logging

import numpy as np

from src.domain.complex import disk_partition
from src.domain.geometry import require_packing_metric
from src.domain.models import (
    ComparisonTolerance,
    ComparisonVerdict,
    PartitionAB,
    RadiusVector,
    Violation,
    WeightedSurface,
)

logger = logging.getLogger(__name__)


def check_comparison(
    surface: WeightedSurface,
    partition: PartitionAB,
    r: RadiusVector,
    R: RadiusVector,
    tolerance: ComparisonTolerance = ComparisonTolerance(),
) -> ComparisonVerdict:
    """
    Evaluate both hypotheses and the conclusion of the comparison for the pair (r, R).

    Args:
        surface: Weighted surface carrying both metrics
        partition: A (curvature-controlled) and B (radius-controlled) vertices
        r: The smaller candidate metric
        R: The larger candidate metric
        tolerance: Slack for the hypothesis and conclusion inequalities

    Returns:
        ComparisonVerdict with per-vertex margins R - r

    Raises:
        NotAPackingMetricError: r or R degenerates some face (label 'r' or 'R')
    """
    n = surface.vertex_count
    partition.check_covers(n)
    curvature_r = require_packing_metric(surface, r.check_size(n), "r").curvature
    curvature_R = require_packing_metric(surface, R.check_size(n), "R").curvature

    margins = R.values - r.values
    b_index = list(partition.b)
    a_index = list(partition.a)
    hyp_radii_ok = bool(np.all(margins[b_index] >= -tolerance.hypothesis_slack))
    hyp_curv_ok = bool(np.all(curvature_R[a_index] - curvature_r[a_index] >= -tolerance.hypothesis_slack))

    violations = tuple(
        Violation(vertex=v, r=r[v], R=R[v]) for v in range(n) if margins[v] < -tolerance.conclusion_slack
    )
    verdict = ComparisonVerdict(
        hyp_radii_ok=hyp_radii_ok,
        hyp_curv_ok=hyp_curv_ok,
        conclusion_ok=not violations,
        violations=violations,
        margins=tuple(float(m) for m in margins),
    )
    if verdict.hypotheses_hold and violations:
        logger.info("Comparison fails at vertices %s although both hypotheses hold", list(verdict.violating_vertices))
    return verdict


def check_disk_conjecture(
    disk: WeightedSurface,
    r: RadiusVector,
    R: RadiusVector,
    tolerance: ComparisonTolerance = ComparisonTolerance(),
) -> ComparisonVerdict:
    """Comparison with A = interior vertices and B = boundary vertices."""
    return check_comparison(disk, disk_partition(disk.triangulation), r, R, tolerance)
