"""
Circle packing geometry - pure functions only.
Implements induced edge lengths, triangle validity (direct and radius-polynomial
criteria), inner angles, discrete curvature and the degeneration limits.

Array kernels take radii/inversive distances with a trailing axis of length 3
in face order; entry a of a length or inversive array refers to the edge
opposite vertex a.
"""
import logging
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.domain.complex import euler_characteristic_of_subcomplex, link
from src.domain.errors import (
    DegenerateTriangleError,
    InversiveOutOfRangeError,
    NotAPackingMetricError,
    NotConcaveRegionError,
)
from src.domain.models import (
    Background,
    Face,
    GammaWeights,
    MetricReport,
    RadiusVector,
    VertexSubset,
    WeightedSurface,
    edge_key,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
NEXT = np.array([1, 2, 0])
PREV = np.array([2, 0, 1])

BackgroundLike = Union[Background, str]


def edge_length(background: BackgroundLike, r_i, r_j, inversive):
    """
    Length of the edge between two circles at inversive distance I.

    Euclidean:  sqrt(r_i^2 + r_j^2 + 2 r_i r_j I)
    Hyperbolic: arcosh(cosh r_i cosh r_j + I sinh r_i sinh r_j)

    Both are evaluated in a cancellation-free form; accepts scalars or arrays.
    """
    r_i = np.asarray(r_i, dtype=float)
    r_j = np.asarray(r_j, dtype=float)
    inversive = np.asarray(inversive, dtype=float)

    if Background.parse(background) is Background.EUCLIDEAN:
        radicand = (r_i - r_j) ** 2 + 2.0 * r_i * r_j * (1.0 + inversive)
        assert np.all(radicand > 0), "edge length radicand must be positive for I > -1"
        length = np.sqrt(radicand)
    else:
        # cosh(l) - 1
        excess = 2.0 * np.sinh(0.5 * (r_i - r_j)) ** 2 + (1.0 + inversive) * np.sinh(r_i) * np.sinh(r_j)
        assert np.all(excess > 0), "arcosh argument must exceed 1 for I > -1"
        length = np.log1p(excess + np.sqrt(excess * (excess + 2.0)))

    return float(length) if length.ndim == 0 else length


def face_lengths(background: BackgroundLike, radii, inversive) -> np.ndarray:
    """Edge lengths opposite each vertex; radii and inversive have shape (..., 3)."""
    radii = np.asarray(radii, dtype=float)
    inversive = np.asarray(inversive, dtype=float)
    return np.asarray(edge_length(background, radii[..., NEXT], radii[..., PREV], inversive))


def gamma_array(inversive) -> np.ndarray:
    inversive = np.asarray(inversive, dtype=float)
    return inversive + inversive[..., NEXT] * inversive[..., PREV]


def gamma_weights(surface: WeightedSurface, face: Sequence[int]) -> GammaWeights:
    """gamma^a = I_a + I_b I_c at each vertex of the face."""
    face = tuple(int(v) for v in face)
    values = gamma_array(surface.face_inversive(face))
    return GammaWeights(face=face, values=tuple(float(g) for g in values))


def quartic(lengths) -> np.ndarray:
    """(l_i + l_j + l_k)(l_j + l_k - l_i)(l_i + l_k - l_j)(l_i + l_j - l_k), i.e. 16 x area^2 in the plane."""
    lengths = np.asarray(lengths, dtype=float)
    a, b, c = lengths[..., 0], lengths[..., 1], lengths[..., 2]
    return np.asarray((a + b + c) * (b + c - a) * (a + c - b) * (a + b - c))


def triangle_valid_direct(l_i: float, l_j: float, l_k: float) -> bool:
    """True iff the three lengths satisfy the strict triangle inequalities."""
    return bool(quartic([l_i, l_j, l_k]) > 0)


def validity_polynomial(background: BackgroundLike, radii, inversive) -> np.ndarray:
    """
    Radius polynomial whose sign decides the triangle inequalities.

    Euclidean: r_i^2 r_j^2 (1 - I_k^2) + r_i^2 r_k^2 (1 - I_j^2) + r_j^2 r_k^2 (1 - I_i^2)
               + 2 r_i r_j r_k (r_i g_i + r_j g_j + r_k g_k)
    (a quarter of the quartic in the induced lengths).

    Hyperbolic, with S = sinh r and C = cosh r:
        2 S_i^2 S_j^2 S_k^2 (1 + I_i I_j I_k) + sum S_a^2 S_b^2 (1 - I_c^2)
        + 2 S_i S_j S_k (S_i C_j C_k g_i + C_i S_j C_k g_j + C_i C_j S_k g_k)
    """
    radii = np.asarray(radii, dtype=float)
    inversive = np.asarray(inversive, dtype=float)
    gamma = gamma_array(inversive)

    if Background.parse(background) is Background.EUCLIDEAN:
        s = radii
        weight = s
    else:
        s = np.sinh(radii)
        c = np.cosh(radii)
        weight = s * c[..., NEXT] * c[..., PREV]

    pair_terms = np.sum(s[..., NEXT] ** 2 * s[..., PREV] ** 2 * (1.0 - inversive ** 2), axis=-1)
    triple = s[..., 0] * s[..., 1] * s[..., 2]
    value = pair_terms + 2.0 * triple * np.sum(weight * gamma, axis=-1)
    if Background.parse(background) is Background.HYPERBOLIC:
        value = value + 2.0 * triple ** 2 * (1.0 + inversive[..., 0] * inversive[..., 1] * inversive[..., 2])
    return value


def triangle_valid_polynomial(surface: WeightedSurface, face: Sequence[int], radii: Sequence[float]) -> bool:
    """Radius-polynomial validity test for one face; `radii` are the face's radii in face order."""
    return bool(validity_polynomial(surface.background, radii, surface.face_inversive(face)) > 0)


def angles_from_lengths(background: BackgroundLike, lengths) -> np.ndarray:
    """
    Inner angles opposite each length, shape (..., 3); NaN where the face is degenerate.

    Uses atan2(sin-part, cos-part) from the (hyperbolic) law of cosines so that
    small angles keep full precision.
    """
    lengths = np.asarray(lengths, dtype=float)
    valid = quartic(lengths) > 0
    ln, lp = lengths[..., NEXT], lengths[..., PREV]

    if Background.parse(background) is Background.EUCLIDEAN:
        sin_part = np.sqrt(np.maximum(quartic(lengths), 0.0))[..., None]
        cos_part = ln ** 2 + lp ** 2 - lengths ** 2
    else:
        ch = np.cosh(lengths)
        gram = np.asarray(1.0 + 2.0 * ch[..., 0] * ch[..., 1] * ch[..., 2] - np.sum(ch ** 2, axis=-1))
        sin_part = np.sqrt(np.maximum(gram, 0.0))[..., None]
        cos_part = ch[..., NEXT] * ch[..., PREV] - ch

    angles = np.arctan2(np.broadcast_to(sin_part, cos_part.shape), cos_part)
    return np.where(valid[..., None], angles, np.nan)


def inner_angles(background: BackgroundLike, l_i: float, l_j: float, l_k: float) -> Tuple[float, float, float]:
    """
    Inner angles (theta_i, theta_j, theta_k), theta_a opposite l_a.

    Raises:
        DegenerateTriangleError: when the lengths violate the triangle inequality
    """
    if not triangle_valid_direct(l_i, l_j, l_k):
        raise DegenerateTriangleError(f"Lengths ({l_i}, {l_j}, {l_k}) do not form a triangle")
    theta = angles_from_lengths(background, [l_i, l_j, l_k])
    return float(theta[0]), float(theta[1]), float(theta[2])


def triangle_area(background: BackgroundLike, l_i: float, l_j: float, l_k: float) -> float:
    """Heron's formula in the plane; angle defect pi - sum(theta) in the hyperbolic plane."""
    if Background.parse(background) is Background.EUCLIDEAN:
        if not triangle_valid_direct(l_i, l_j, l_k):
            raise DegenerateTriangleError(f"Lengths ({l_i}, {l_j}, {l_k}) do not form a triangle")
        return float(np.sqrt(quartic([l_i, l_j, l_k])) / 4.0)
    return float(np.pi - sum(inner_angles(background, l_i, l_j, l_k)))


def metric_report(surface: WeightedSurface, radii: RadiusVector) -> MetricReport:
    """
    Edge lengths, per-face validity, angles, areas and curvature K(v) = 2 pi - sum of angles at v.

    Invalid faces are reported, not raised: their angles are absent and the
    curvature of their vertices is NaN.
    """
    t = surface.triangulation
    radii.check_size(t.vertex_count)
    faces = t.face_array
    r = radii.values

    edges = np.array(t.edges, dtype=np.int64)
    edge_values = np.array([surface.inversive[edge] for edge in t.edges])
    lengths_by_edge = np.atleast_1d(edge_length(surface.background, r[edges[:, 0]], r[edges[:, 1]], edge_values))

    lengths = face_lengths(surface.background, r[faces], surface.face_inversive_array)
    angles = angles_from_lengths(surface.background, lengths)
    valid = quartic(lengths) > 0

    angle_sums = np.zeros(t.vertex_count)
    np.add.at(angle_sums, faces[valid], angles[valid])
    curvature = TWO_PI - angle_sums
    if not np.all(valid):
        curvature[np.unique(faces[~valid])] = np.nan

    face_angles: Dict[Tuple[Face, int], float] = {}
    face_valid: Dict[Face, bool] = {}
    face_area: Dict[Face, float] = {}
    for n, face in enumerate(t.faces):
        face_valid[face] = bool(valid[n])
        if not valid[n]:
            continue
        for slot, vertex in enumerate(face):
            face_angles[(face, vertex)] = float(angles[n, slot])
        if surface.background is Background.EUCLIDEAN:
            face_area[face] = float(np.sqrt(quartic(lengths[n])) / 4.0)
        else:
            face_area[face] = float(np.pi - angles[n].sum())

    is_packing_metric = bool(np.all(valid))
    if is_packing_metric:
        assert np.all(curvature < TWO_PI), "curvature must stay below 2 pi"

    return MetricReport(
        edge_lengths={edge: float(length) for edge, length in zip(t.edges, lengths_by_edge)},
        face_angles=face_angles,
        face_valid=face_valid,
        face_area=face_area,
        curvature=curvature,
        is_packing_metric=is_packing_metric,
    )


def require_packing_metric(surface: WeightedSurface, radii: RadiusVector, label: str = "radius vector") -> MetricReport:
    report = metric_report(surface, radii)
    if not report.is_packing_metric:
        raise NotAPackingMetricError(label, report.invalid_faces[0])
    return report


def intersection_angle(inversive: float) -> float:
    """Phi in [0, pi) with I = cos(Phi); only defined for I in (-1, 1]."""
    if not -1.0 < inversive <= 1.0:
        raise InversiveOutOfRangeError(f"Intersection angle needs I in (-1, 1], got {inversive}")
    return float(np.arccos(inversive))


def classify_intersection(inversive: float) -> str:
    """Relative position of two circles at inversive distance I."""
    if inversive <= -1.0:
        raise InversiveOutOfRangeError(f"Inversive distance must be > -1, got {inversive}")
    if inversive < 0.0:
        return "obtuse"
    if inversive == 0.0:
        return "orthogonal"
    if inversive < 1.0:
        return "acute"
    if inversive == 1.0:
        return "tangent"
    return "disjoint"


def check_concave_region(surface: WeightedSurface) -> None:
    """
    Require I in (-1, 1] on every edge and gamma >= 0 on every face.

    Raises:
        NotConcaveRegionError: naming the first offending edge or face
    """
    for edge, value in surface.inversive.items():
        if value > 1.0:
            raise NotConcaveRegionError(f"Edge {list(edge)} has inversive distance {value} > 1")
    gamma = gamma_array(surface.face_inversive_array)
    bad = np.nonzero(np.any(gamma < 0.0, axis=1))[0]
    if bad.size:
        face = surface.triangulation.faces[bad[0]]
        raise NotConcaveRegionError(f"Face {list(face)} has a negative gamma weight {gamma[bad[0]].tolist()}")


def degeneration_limit(surface: WeightedSurface, subset: VertexSubset) -> float:
    """
    Limit of sum_{j in J} K(j) when the radii in J shrink to zero:

        2 pi chi(F_J) - sum over (face, v) in Lk(J) of (pi - Phi(edge of face opposite v))

    Raises:
        InversiveOutOfRangeError: when some edge has I > 1
    """
    t = surface.triangulation
    if surface.max_inversive > 1.0:
        raise InversiveOutOfRangeError(f"Degeneration limit needs I <= 1 on all edges, max is {surface.max_inversive}")
    chi = euler_characteristic_of_subcomplex(t, subset)
    total = TWO_PI * chi
    for face, vertex in link(t, subset):
        i, j = (v for v in face if v != vertex)
        total -= np.pi - intersection_angle(surface.inversive[edge_key(i, j)])
    return float(total)


def curvature_lower_bound_check(
    surface: WeightedSurface,
    radii: RadiusVector,
    subset: VertexSubset,
) -> Tuple[float, float, bool]:
    """
    Compare sum_{j in J} K(j) with the degeneration limit of J.

    Returns:
        (lhs, rhs, holds) with holds = lhs > rhs; for J empty both sides are 0
        and holds is reported as True by convention.
    """
    check_concave_region(surface)
    report = require_packing_metric(surface, radii)
    if not len(subset):
        return 0.0, 0.0, True
    lhs = float(sum(report.curvature[j] for j in subset))
    rhs = degeneration_limit(surface, subset)
    return lhs, rhs, lhs > rhs


def subset_bound_violations(
    surface: WeightedSurface,
    curvature: Dict[int, float],
    candidates: Iterable[VertexSubset],
) -> List[Tuple[VertexSubset, float, float]]:
    """Subsets J whose curvature sum does not exceed the degeneration limit: (J, sum, limit)."""
    violations = []
    for subset in candidates:
        total = float(sum(curvature[j] for j in subset))
        limit = degeneration_limit(surface, subset)
        if total <= limit:
            violations.append((subset, total, limit))
    return violations


def degeneration_scan(
    surface: WeightedSurface,
    radii: RadiusVector,
    subset: VertexSubset,
    eps_values: Sequence[float],
) -> pd.DataFrame:
    """
    Shrink the radii in J to each eps, keep the other radii fixed, and tabulate
    sum_{j in J} K(j) against the degeneration limit.
    """
    limit = degeneration_limit(surface, subset)
    rows = []
    for eps in eps_values:
        shrunk = radii.with_updates({j: eps for j in subset})
        report = metric_report(surface, shrunk)
        total = float(sum(report.curvature[j] for j in subset)) if len(subset) else 0.0
        rows.append({"eps": float(eps), "sum_curvature": total, "limit": limit, "gap": total - limit})
        logger.debug("eps=%g sum K=%.12f limit=%.12f", eps, total, limit)
    return pd.DataFrame(rows, columns=["eps", "sum_curvature", "limit", "gap"])
