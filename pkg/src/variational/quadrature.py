"""
Adaptive composite Gauss-Legendre quadrature on an interval.
"""
from functools import lru_cache
from typing import Callable, Iterable, Tuple

import numpy as np
from scipy.special import roots_legendre

from src.domain.models import QuadratureOptions

# Vectorised integrand: parameters t of shape (m,) -> values of shape (m,)
Integrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def _legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(order)
    return nodes, weights


def gauss_legendre(fn: Integrand, a: float, b: float, order: int) -> float:
    nodes, weights = _legendre(order)
    half = 0.5 * (b - a)
    ts = half * nodes + 0.5 * (a + b)
    return half * float(np.dot(weights, fn(ts)))


def adaptive_gauss_legendre(
    fn: Integrand,
    a: float,
    b: float,
    options: QuadratureOptions,
    breakpoints: Iterable[float] = (),
) -> float:
    """
    Integrate fn over [a, b], splitting first at `breakpoints` and then
    bisecting any piece whose two-half estimate disagrees with the whole
    by more than options.tol (relative to max(1, |value|)).
    """
    cuts = [a] + sorted(t for t in breakpoints if a < t < b) + [b]
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        total += _refine(fn, lo, hi, gauss_legendre(fn, lo, hi, options.order), options, 0)
    return total


def _refine(fn: Integrand, lo: float, hi: float, whole: float, options: QuadratureOptions, depth: int) -> float:
    mid = 0.5 * (lo + hi)
    left = gauss_legendre(fn, lo, mid, options.order)
    right = gauss_legendre(fn, mid, hi, options.order)
    halves = left + right
    if depth >= options.max_depth or abs(halves - whole) <= options.tol * max(1.0, abs(halves)):
        return halves
    return _refine(fn, lo, mid, left, options, depth + 1) + _refine(fn, mid, hi, right, options, depth + 1)
