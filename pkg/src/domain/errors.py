"""
Exception hierarchy for the circle packing toolkit.
Every error is a ValueError so callers that only know about bad input still catch it.
"""


class CirclePackingError(ValueError):
    """Base class for all toolkit errors."""


class SurfaceFormatError(CirclePackingError):
    """Malformed surface, radius or vertex-value input."""


class NonSimplicialError(CirclePackingError):
    """A face repeats a vertex, or the same face appears twice."""


class EdgeInTooManyFacesError(CirclePackingError):
    """An edge lies in three or more faces."""


class DisconnectedError(CirclePackingError):
    """The 1-skeleton of the triangulation is not connected."""


class NotASurfaceError(CirclePackingError):
    """Some vertex star is neither a disk nor a half-disk."""


class AlreadyClosedError(CirclePackingError):
    """Doubling was requested for a surface without boundary."""


class PartitionError(CirclePackingError):
    """A vertex partition A/B does not cover the vertices or overlaps."""


class InversiveOutOfRangeError(CirclePackingError):
    """An inversive distance lies outside the range an operation requires."""


class DegenerateTriangleError(CirclePackingError):
    """Edge lengths of a face violate the triangle inequality."""


class DomainError(CirclePackingError):
    """A coordinate lies outside the chart of the background geometry."""


class NotConcaveRegionError(CirclePackingError):
    """Some face has a negative gamma weight or an inversive distance above 1."""


class InfeasibleTargetError(CirclePackingError):
    """Prescribed curvatures cannot be realised on the fixed-radius slice."""


class MaxIterationsError(CirclePackingError):
    """The Newton solver did not reach the requested tolerance."""


class NotAPackingMetricError(CirclePackingError):
    """A radius vector induces at least one degenerate face."""

    def __init__(self, label: str, face):
        self.label = label
        self.face = face
        super().__init__(f"{label} is not a circle packing metric: face {list(face)} violates the triangle inequality")
