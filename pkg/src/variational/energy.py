"""
The energy W: line integrals of the closed 1-form sum_a theta_a du_a.

W_face(u) integrates along the straight segment from the base point (the
image of r = (1, 1, 1)) to u; W is the sum over faces and its gradient is
2 pi - K. In the hyperbolic chart u = 0 is outside the domain (u < 0), which
is why the base point is not the origin; only differences and gradients of W
are ever used.
"""
import logging
from typing import Sequence

import numpy as np

from src.domain.errors import DegenerateTriangleError
from src.domain.geometry import TWO_PI, angles_from_lengths, face_lengths, metric_report
from src.domain.models import DEFAULT_QUADRATURE, QuadratureOptions, WeightedSurface
from src.variational.coordinates import base_point, from_u, u_to_radii
from src.variational.quadrature import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

_BREAKPOINT_SAMPLES = 33


def face_angles_at(background, inversive, u_points) -> np.ndarray:
    """Angles of one face at a batch of u-points of shape (m, 3)."""
    angles = angles_from_lengths(background, face_lengths(background, u_to_radii(background, u_points), inversive))
    if np.isnan(angles).any():
        raise DegenerateTriangleError("Face degenerates along the integration path")
    return angles


def segment_integral(
    background,
    inversive,
    start: np.ndarray,
    end: np.ndarray,
    options: QuadratureOptions = DEFAULT_QUADRATURE,
) -> float:
    """Integral of sum_a theta_a du_a along the straight segment start -> end in u-space."""
    start = np.asarray(start, dtype=float)
    direction = np.asarray(end, dtype=float) - start
    if not np.any(direction):
        return 0.0

    def angles(ts: np.ndarray) -> np.ndarray:
        return face_angles_at(background, inversive, start + np.outer(ts, direction))

    def integrand(ts: np.ndarray) -> np.ndarray:
        return angles(ts) @ direction

    return adaptive_gauss_legendre(integrand, 0.0, 1.0, options, _angle_breakpoints(angles, options))


def _angle_breakpoints(angles, options: QuadratureOptions):
    """Split the segment where the accumulated angle variation passes multiples of max_angle_step."""
    ts = np.linspace(0.0, 1.0, _BREAKPOINT_SAMPLES)
    variation = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(angles(ts), axis=0)).max(axis=1))])
    piece = np.floor(variation / options.max_angle_step)
    return ts[1:][np.diff(piece) > 0].tolist()


def line_integral(
    surface: WeightedSurface,
    face: Sequence[int],
    waypoints: Sequence[Sequence[float]],
    options: QuadratureOptions = DEFAULT_QUADRATURE,
) -> float:
    """Integral of the 1-form along the polyline through `waypoints` (u-coordinates of the face)."""
    inversive = surface.face_inversive(tuple(face))
    points = [np.asarray(p, dtype=float) for p in waypoints]
    return float(sum(
        segment_integral(surface.background, inversive, a, b, options) for a, b in zip(points[:-1], points[1:])
    ))


def face_energy(
    surface: WeightedSurface,
    face: Sequence[int],
    u_face: Sequence[float],
    options: QuadratureOptions = DEFAULT_QUADRATURE,
) -> float:
    """W_face(u): integral from the base point to u along a straight segment."""
    return line_integral(surface, face, [base_point(surface.background), u_face], options)


def total_energy(surface: WeightedSurface, u, options: QuadratureOptions = DEFAULT_QUADRATURE) -> float:
    """W(u) = sum of face energies."""
    u = np.asarray(u, dtype=float)
    return float(sum(face_energy(surface, face, u[list(face)], options) for face in surface.triangulation.faces))


def angle_sums(surface: WeightedSurface, u) -> np.ndarray:
    """
    Sum of the inner angles at each vertex for a batch of u-vectors.

    Accepts shape (N,) or (m, N) and returns the same shape.
    """
    u = np.asarray(u, dtype=float)
    batch = np.atleast_2d(u)
    faces = surface.triangulation.face_array
    radii = u_to_radii(surface.background, batch)
    lengths = face_lengths(surface.background, radii[:, faces], surface.face_inversive_array)
    angles = angles_from_lengths(surface.background, lengths)
    if np.isnan(angles).any():
        raise DegenerateTriangleError("Some face is degenerate at the given u")
    sums = np.zeros_like(batch)
    np.add.at(sums, (np.arange(batch.shape[0])[:, None, None], faces[None, :, :]), angles)
    return sums.reshape(u.shape)


def energy_gradient(surface: WeightedSurface, u) -> np.ndarray:
    """
    grad W(u) = 2 pi - K at from_u(u).

    Raises:
        DegenerateTriangleError: when some face is degenerate at u
    """
    report = metric_report(surface, from_u(surface.background, np.asarray(u, dtype=float)))
    if not report.is_packing_metric:
        raise DegenerateTriangleError(f"Faces {[list(f) for f in report.invalid_faces]} are degenerate")
    return TWO_PI - report.curvature
