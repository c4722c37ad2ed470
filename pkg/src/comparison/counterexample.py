"""
The four-vertex Euclidean disk on which the comparison fails for I >= 1, and its double.

One interior vertex (3) joined to three boundary vertices (0, 1, 2). On the
command line these are labelled 4 and 1, 2, 3.
"""
from typing import Tuple

from src.domain.complex import double, make_surface
from src.domain.models import Background, PartitionAB, RadiusVector, VertexSubset, WeightedSurface

COUNTEREXAMPLE_FACES = ((0, 1, 3), (0, 2, 3), (1, 2, 3))
COUNTEREXAMPLE_INVERSIVE = {
    (0, 1): 1.0,
    (0, 2): 1.0,
    (1, 2): 1.0,
    (0, 3): 1.0,
    (1, 3): 4.0,
    (2, 3): 3.0,
}
SMALL_RADII = (100.0, 100.0, 100.0, 155.0)
LARGE_RADII = (110.0, 240.0, 220.0, 150.0)

Instance = Tuple[WeightedSurface, RadiusVector, RadiusVector, PartitionAB]


def build_counterexample() -> Instance:
    """
    Returns:
        (surface, r, R, partition) with A = {3}, B = {0, 1, 2}; R >= r on B and
        K_R(3) >= K_r(3), yet r(3) = 155 > R(3) = 150
    """
    surface = make_surface(COUNTEREXAMPLE_FACES, Background.EUCLIDEAN, COUNTEREXAMPLE_INVERSIVE)
    partition = PartitionAB(VertexSubset.of(3), VertexSubset.of(0, 1, 2))
    return surface, RadiusVector(SMALL_RADII), RadiusVector(LARGE_RADII), partition


def doubled_counterexample() -> Instance:
    """
    The counterexample glued to a mirror copy along its boundary: a closed
    sphere with 5 vertices. A' holds both copies of the interior vertex and
    the shared boundary stays in B'.
    """
    surface, r, R, partition = build_counterexample()
    doubled = double(surface)
    closed_partition = PartitionAB(
        VertexSubset(doubled.images(partition.a)),
        VertexSubset(doubled.images(partition.b)),
    )
    return doubled.surface, doubled.extend_radii(r), doubled.extend_radii(R), closed_partition
