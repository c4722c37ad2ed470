"""
Coordinate change between radii and the variational chart u.

Euclidean:  u = ln r,           r = exp(u)
Hyperbolic: u = ln tanh(r / 2), r = 2 artanh(exp(u)), so u < 0
"""
from typing import Union

import numpy as np

from src.domain.errors import DomainError
from src.domain.models import Background, RadiusVector, UCoordinates

BackgroundLike = Union[Background, str]


def radii_to_u(background: BackgroundLike, radii) -> np.ndarray:
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0) or not np.all(np.isfinite(radii)):
        raise DomainError(f"Radii must be finite and positive, got {np.ravel(radii).tolist()}")
    if Background.parse(background) is Background.EUCLIDEAN:
        return np.log(radii)
    decay = np.exp(-radii)
    # ln tanh(r/2) = ln(1 - e^-r) - ln(1 + e^-r)
    return np.log1p(-decay) - np.log1p(decay)


def u_to_radii(background: BackgroundLike, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if Background.parse(background) is Background.EUCLIDEAN:
        return np.exp(u)
    if np.any(u >= 0):
        raise DomainError(f"Hyperbolic u-coordinates must be negative, got {np.ravel(u).tolist()}")
    # 2 artanh(x) = ln((1 + x) / (1 - x)) with x = e^u, and 1 - x = -expm1(u)
    gap = -np.expm1(u)
    return np.log((2.0 - gap) / gap)


def to_u(background: BackgroundLike, radii: RadiusVector) -> UCoordinates:
    background = Background.parse(background)
    return UCoordinates(background=background, values=radii_to_u(background, radii.values))


def from_u(background: BackgroundLike, u: Union[UCoordinates, np.ndarray]) -> RadiusVector:
    """
    Raises:
        DomainError: for a nonnegative hyperbolic coordinate
    """
    values = u.values if isinstance(u, UCoordinates) else u
    return RadiusVector(u_to_radii(background, values))


def base_point(background: BackgroundLike, size: int = 3) -> np.ndarray:
    """Base point of the energy integrals: the image of r = (1, ..., 1)."""
    return radii_to_u(background, np.ones(size))
