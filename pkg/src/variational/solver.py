"""
Prescribed-curvature solver.
Newton iteration on the A-coordinates of u maximizing the concave function

    F(u) = W(u) - sum_{a in A} (2 pi - target(a)) u_a

with the B-coordinates frozen, so grad F = target - K on A and the Hessian of
F is the assembled angle Jacobian restricted to A.
"""
import logging
from itertools import combinations
from typing import Iterator, List, Mapping, Optional

import numpy as np

from src.domain.errors import (
    DegenerateTriangleError,
    DomainError,
    InfeasibleTargetError,
    MaxIterationsError,
    PartitionError,
)
from src.domain.geometry import TWO_PI, check_concave_region, subset_bound_violations
from src.domain.models import (
    DEFAULT_QUADRATURE,
    DEFAULT_SOLVER_OPTIONS,
    Background,
    PartitionAB,
    QuadratureOptions,
    RadiusVector,
    SolveOutcome,
    SolverOptions,
    SolveStep,
    VertexSubset,
    WeightedSurface,
)
from src.variational.coordinates import from_u, radii_to_u
from src.variational.energy import angle_sums
from src.variational.jacobian import assembled_jacobian
from src.variational.quadrature import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

# Accept a step whose energy gain is lost in rounding if it still lowers the residual
_GAIN_FLOOR = -1e-15


def solve_prescribed_curvature(
    surface: WeightedSurface,
    fixed: Mapping[int, float],
    target: Mapping[int, float],
    options: SolverOptions = DEFAULT_SOLVER_OPTIONS,
    initial: Optional[RadiusVector] = None,
    quadrature: QuadratureOptions = DEFAULT_QUADRATURE,
) -> SolveOutcome:
    """
    Find radii with r|_B = fixed and K|_A = target.

    Args:
        surface: Weighted surface with I in (-1, 1] and gamma >= 0 on every face
        fixed: Radius of every B-vertex
        target: Prescribed curvature of every A-vertex
        options: Tolerance, iteration budget and line-search settings
        initial: Optional starting radii (only the A-entries are used)
        quadrature: Settings of the step-gain line integral

    Returns:
        SolveOutcome with the radii, iteration count, residual and step history

    Raises:
        PartitionError: A and B do not partition the vertices, A is empty, or B is empty in Euclidean background
        NotConcaveRegionError: the surface is outside the concave regime
        InfeasibleTargetError: a target violates a degeneration bound or the iterates diverge
        MaxIterationsError: no convergence and options.strict is set
    """
    n = surface.vertex_count
    partition = PartitionAB(VertexSubset(frozenset(target)), VertexSubset(frozenset(fixed))).check_covers(n)
    if surface.background is Background.EUCLIDEAN and not len(partition.b):
        raise PartitionError("Euclidean background needs at least one fixed-radius vertex (B must be nonempty)")
    check_concave_region(surface)

    a_index = np.array(list(partition.a), dtype=np.int64)
    goal = np.array([float(target[a]) for a in partition.a])
    _check_targets(surface, partition, target, options)

    u = radii_to_u(surface.background, _initial_radii(n, fixed, partition, initial))
    history: List[SolveStep] = []

    residual = np.inf
    for iteration in range(options.max_iter + 1):
        gradient = goal - _curvature(surface, u)[a_index]
        residual = float(np.abs(gradient).max())
        logger.debug("iteration %d: residual %.3e", iteration, residual)
        if residual <= options.tol:
            logger.info("Converged after %d iterations (residual %.3e)", iteration, residual)
            return SolveOutcome(from_u(surface.background, u), iteration, residual, True, tuple(history))
        if iteration == options.max_iter:
            break

        hessian = assembled_jacobian(surface, u)[np.ix_(a_index, a_index)]
        try:
            direction = np.linalg.solve(hessian, -gradient)
        except np.linalg.LinAlgError:
            logger.warning("Singular Hessian at iteration %d, falling back to gradient ascent", iteration)
            direction = gradient

        step = _line_search(surface, u, a_index, goal, direction, residual, options, quadrature)
        if step is None:
            logger.warning("Line search stalled at iteration %d (residual %.3e)", iteration, residual)
            break
        size, gain, u = step
        history.append(SolveStep(iteration=iteration + 1, residual=residual, step_size=size, energy_gain=gain))
        _check_divergence(surface.background, u[a_index], options)

    if options.strict:
        raise MaxIterationsError(
            f"No convergence after {len(history)} iterations: residual {residual:.3e} > tol {options.tol:.1e}"
        )
    return SolveOutcome(from_u(surface.background, u), len(history), residual, False, tuple(history))


def candidate_subsets(a: VertexSubset, max_enumeration: int) -> Iterator[VertexSubset]:
    """All nonempty J in A when A is small, otherwise the singletons and A itself."""
    members = list(a)
    if len(members) <= max_enumeration:
        for size in range(1, len(members) + 1):
            for subset in combinations(members, size):
                yield VertexSubset(frozenset(subset))
        return
    for vertex in members:
        yield VertexSubset.of(vertex)
    yield a


def _check_targets(
    surface: WeightedSurface,
    partition: PartitionAB,
    target: Mapping[int, float],
    options: SolverOptions,
) -> None:
    too_large = [a for a in partition.a if target[a] >= TWO_PI]
    if too_large:
        raise InfeasibleTargetError(f"Target curvature must stay below 2 pi at vertices {too_large}")
    if not options.check_bounds:
        return
    violations = subset_bound_violations(
        surface, dict(target), candidate_subsets(partition.a, options.max_subset_enumeration)
    )
    if violations:
        subset, total, limit = violations[0]
        raise InfeasibleTargetError(
            f"Target curvature over J={list(subset)} sums to {total:.6f}, "
            f"not above the degeneration limit {limit:.6f}"
        )


def _initial_radii(
    n: int,
    fixed: Mapping[int, float],
    partition: PartitionAB,
    initial: Optional[RadiusVector],
) -> np.ndarray:
    if initial is not None:
        radii = initial.check_size(n).values.copy()
    else:
        start = float(np.exp(np.mean(np.log(list(fixed.values()))))) if fixed else 1.0
        radii = np.full(n, start)
    for b in partition.b:
        radii[b] = float(fixed[b])
    return radii


def _curvature(surface: WeightedSurface, u: np.ndarray) -> np.ndarray:
    return TWO_PI - angle_sums(surface, u)


def _line_search(
    surface: WeightedSurface,
    u: np.ndarray,
    a_index: np.ndarray,
    goal: np.ndarray,
    direction: np.ndarray,
    residual: float,
    options: SolverOptions,
    quadrature: QuadratureOptions,
):
    """Backtrack from options.damping until F increases; None when the step drops below min_step."""
    size = options.damping
    while size >= options.min_step:
        delta = size * direction
        trial = u.copy()
        trial[a_index] += delta
        try:
            gain = _step_gain(surface, u, a_index, goal, delta, quadrature)
            trial_residual = float(np.abs(goal - _curvature(surface, trial)[a_index]).max())
        except (DomainError, DegenerateTriangleError):
            size *= 0.5
            continue
        if gain > 0 or (gain >= _GAIN_FLOOR and trial_residual < residual):
            return size, gain, trial
        size *= 0.5
    return None


def _step_gain(
    surface: WeightedSurface,
    u: np.ndarray,
    a_index: np.ndarray,
    goal: np.ndarray,
    delta: np.ndarray,
    quadrature: QuadratureOptions,
) -> float:
    """F(u + delta) - F(u) as the line integral of grad F along the step."""

    def integrand(ts: np.ndarray) -> np.ndarray:
        points = np.repeat(u[None, :], ts.size, axis=0)
        points[:, a_index] += np.outer(ts, delta)
        curvature = _curvature(surface, points)[:, a_index]
        return (goal - curvature) @ delta

    return adaptive_gauss_legendre(integrand, 0.0, 1.0, quadrature)


def _check_divergence(background: Background, u_a: np.ndarray, options: SolverOptions) -> None:
    if np.abs(u_a).max() > options.max_abs_u:
        raise InfeasibleTargetError(f"Iterates diverge: |u| reached {np.abs(u_a).max():.3g}")
    # r = 2 artanh(e^u) ~ ln(2 / |u|) as u -> 0-
    if background is Background.HYPERBOLIC and np.abs(u_a).min() < 2.0 * np.exp(-options.max_abs_u):
        raise InfeasibleTargetError("Iterates diverge: a hyperbolic radius grows without bound")
