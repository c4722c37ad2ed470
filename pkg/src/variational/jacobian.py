"""
Angle Jacobians d(theta)/d(u) by the chain rule: angles <- lengths <- radii <- u.

Per face (vertex order a, and n = next, p = previous vertex of a):
    d cos(theta_a) / d l_a  = -l_a / (l_n l_p)                 (Euclidean)
                            = -S_a / (S_n S_p)                  (hyperbolic, S = sinh l)
    d cos(theta_a) / d l_n  = (l_a^2 + l_n^2 - l_p^2) / (2 l_n^2 l_p)
                            = (C_a C_n - C_p) / (S_n^2 S_p)     (C = cosh l)
    d theta = -d cos(theta) / sin(theta)

The edge opposite a joins n and p, and dr/du is r (Euclidean) or sinh r (hyperbolic).
"""
from typing import Sequence

import numpy as np

from src.domain.errors import DegenerateTriangleError
from src.domain.geometry import NEXT, PREV, angles_from_lengths, face_lengths
from src.domain.models import AngleJacobian, Background, WeightedSurface, face_key
from src.variational.coordinates import u_to_radii

_SLOTS = np.arange(3)


def angle_jacobians(background, radii, inversive) -> np.ndarray:
    """Batched Jacobians, shape (..., 3, 3); NaN for degenerate faces."""
    background = Background.parse(background)
    radii = np.asarray(radii, dtype=float)
    inversive = np.asarray(inversive, dtype=float)

    lengths = face_lengths(background, radii, inversive)
    theta = angles_from_lengths(background, lengths)
    l_next, l_prev = lengths[..., NEXT], lengths[..., PREV]
    r_next, r_prev = radii[..., NEXT], radii[..., PREV]

    dcos = np.zeros(lengths.shape + (3,))
    dlen = np.zeros(lengths.shape + (3,))
    if background is Background.EUCLIDEAN:
        dcos[..., _SLOTS, _SLOTS] = -lengths / (l_next * l_prev)
        dcos[..., _SLOTS, NEXT] = (lengths ** 2 + l_next ** 2 - l_prev ** 2) / (2.0 * l_next ** 2 * l_prev)
        dcos[..., _SLOTS, PREV] = (lengths ** 2 + l_prev ** 2 - l_next ** 2) / (2.0 * l_prev ** 2 * l_next)

        dlen[..., _SLOTS, NEXT] = r_next * (r_next + r_prev * inversive) / lengths
        dlen[..., _SLOTS, PREV] = r_prev * (r_prev + r_next * inversive) / lengths
    else:
        s, c = np.sinh(lengths), np.cosh(lengths)
        s_next, s_prev = s[..., NEXT], s[..., PREV]
        c_next, c_prev = c[..., NEXT], c[..., PREV]
        dcos[..., _SLOTS, _SLOTS] = -s / (s_next * s_prev)
        dcos[..., _SLOTS, NEXT] = (c * c_next - c_prev) / (s_next ** 2 * s_prev)
        dcos[..., _SLOTS, PREV] = (c * c_prev - c_next) / (s_prev ** 2 * s_next)

        sr_next, sr_prev = np.sinh(r_next), np.sinh(r_prev)
        cr_next, cr_prev = np.cosh(r_next), np.cosh(r_prev)
        dlen[..., _SLOTS, NEXT] = sr_next * (sr_next * cr_prev + inversive * cr_next * sr_prev) / s
        dlen[..., _SLOTS, PREV] = sr_prev * (sr_prev * cr_next + inversive * cr_prev * sr_next) / s

    dtheta_dlen = -dcos / np.sin(theta)[..., None]
    return dtheta_dlen @ dlen


def angle_jacobian(surface: WeightedSurface, face: Sequence[int], u_face: Sequence[float]) -> AngleJacobian:
    """
    Jacobian J[a][b] = d theta_a / d u_b of one face, in the given vertex order.

    Raises:
        DegenerateTriangleError: when the face is not a triangle at u
    """
    face = tuple(int(v) for v in face)
    radii = u_to_radii(surface.background, u_face)
    matrix = angle_jacobians(surface.background, radii, surface.face_inversive(face))
    if not np.all(np.isfinite(matrix)):
        raise DegenerateTriangleError(f"Face {list(face)} is degenerate at radii {radii.tolist()}")
    return AngleJacobian(face=face, matrix=matrix)


def assembled_jacobian(surface: WeightedSurface, u) -> np.ndarray:
    """
    N x N matrix of d(sum of angles at v)/d u_w, the Hessian of the energy W.

    Raises:
        DegenerateTriangleError: when some face is degenerate at u
    """
    t = surface.triangulation
    faces = t.face_array
    radii = u_to_radii(surface.background, u)
    blocks = angle_jacobians(surface.background, radii[faces], surface.face_inversive_array)
    if not np.all(np.isfinite(blocks)):
        bad = int(np.nonzero(~np.all(np.isfinite(blocks), axis=(1, 2)))[0][0])
        raise DegenerateTriangleError(f"Face {list(face_key(t.faces[bad]))} is degenerate")

    hessian = np.zeros((t.vertex_count, t.vertex_count))
    rows = np.repeat(faces[:, :, None], 3, axis=2)
    cols = np.repeat(faces[:, None, :], 3, axis=1)
    np.add.at(hessian, (rows, cols), blocks)
    return hessian
