"""
Domain models for inversive distance circle packings.
All classes are immutable (frozen=True); numpy payloads are stored read-only.

Vertex indices are 0-based. The vertex labels used on the command line
are 1-based and are shifted at the CLI boundary only.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

import numpy as np

from src.domain.errors import (
    CirclePackingError,
    InversiveOutOfRangeError,
    PartitionError,
    SurfaceFormatError,
)

Edge = Tuple[int, int]
Face = Tuple[int, int, int]


def edge_key(i: int, j: int) -> Edge:
    """Canonical (sorted) key of the edge ij."""
    return (i, j) if i < j else (j, i)


def face_key(face: Iterable[int]) -> Face:
    a, b, c = sorted(int(v) for v in face)
    return (a, b, c)


def _frozen_array(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


class Background(str, Enum):
    """Background geometry of the face triangles."""
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"

    @classmethod
    def parse(cls, value) -> 'Background':
        if isinstance(value, Background):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise SurfaceFormatError(f"Unknown background geometry {value!r}, expected 'euclidean' or 'hyperbolic'")


@dataclass(frozen=True, eq=False)
class Triangulation:
    """
    Finite simplicial triangulation of a surface.

    Instances are produced by `src.domain.complex.build_triangulation`,
    which checks the simplicial, connectivity and surface conditions.
    """
    vertex_count: int
    faces: Tuple[Face, ...]
    edges: Tuple[Edge, ...]
    boundary_edges: FrozenSet[Edge]
    boundary_vertices: FrozenSet[int]

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @cached_property
    def interior_vertices(self) -> FrozenSet[int]:
        return frozenset(self.vertices) - self.boundary_vertices

    @cached_property
    def face_array(self) -> np.ndarray:
        """(F, 3) integer array of face vertices."""
        return _frozen_array(self.faces, dtype=np.int64).reshape(-1, 3)

    @cached_property
    def edge_index(self) -> Mapping[Edge, int]:
        return MappingProxyType({edge: n for n, edge in enumerate(self.edges)})


@dataclass(frozen=True, eq=False)
class WeightedSurface:
    """Triangulation with a background geometry and an inversive distance per edge."""
    triangulation: Triangulation
    background: Background
    inversive: Mapping[Edge, float]

    def __post_init__(self):
        edges = set(self.triangulation.edges)
        given = {edge_key(*edge) for edge in self.inversive}
        missing = sorted(edges - given)
        if missing:
            raise SurfaceFormatError(f"Missing inversive distance for edges {missing}")
        extra = sorted(given - edges)
        if extra:
            raise SurfaceFormatError(f"Inversive distance given for non-edges {extra}")

        normalized: Dict[Edge, float] = {}
        for edge, value in self.inversive.items():
            value = float(value)
            if not np.isfinite(value) or value <= -1.0:
                raise InversiveOutOfRangeError(f"Inversive distance on edge {edge_key(*edge)} must be > -1, got {value}")
            normalized[edge_key(*edge)] = value
        object.__setattr__(self, 'background', Background.parse(self.background))
        object.__setattr__(self, 'inversive', MappingProxyType(normalized))

    @property
    def vertex_count(self) -> int:
        return self.triangulation.vertex_count

    def inversive_of(self, i: int, j: int) -> float:
        return self.inversive[edge_key(i, j)]

    def face_inversive(self, face: Iterable[int]) -> np.ndarray:
        """Inversive distances opposite each vertex of the face, in the face's vertex order."""
        a, b, c = face
        return np.array([self.inversive_of(b, c), self.inversive_of(c, a), self.inversive_of(a, b)])

    @cached_property
    def face_inversive_array(self) -> np.ndarray:
        """(F, 3) array aligned with `triangulation.face_array`."""
        return _frozen_array([self.face_inversive(face) for face in self.triangulation.faces]).reshape(-1, 3)

    @cached_property
    def max_inversive(self) -> float:
        return max(self.inversive.values())


@dataclass(frozen=True)
class VertexSubset:
    """A set J of vertices."""
    members: FrozenSet[int] = frozenset()

    def __post_init__(self):
        members = frozenset(int(v) for v in self.members)
        if any(v < 0 for v in members):
            raise CirclePackingError(f"Vertex indices must be nonnegative, got {sorted(members)}")
        object.__setattr__(self, 'members', members)

    @classmethod
    def of(cls, *vertices: int) -> 'VertexSubset':
        return cls(frozenset(vertices))

    def check_within(self, vertex_count: int) -> 'VertexSubset':
        outside = sorted(v for v in self.members if v >= vertex_count)
        if outside:
            raise CirclePackingError(f"Vertices {outside} are not in [0, {vertex_count})")
        return self

    def __contains__(self, vertex: int) -> bool:
        return vertex in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class RadiusVector:
    """Positive radius per vertex, in length units of the background geometry."""
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size == 0:
            raise SurfaceFormatError("Radius vector is empty")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise SurfaceFormatError(f"Radii must be finite and positive, got {values.tolist()}")
        object.__setattr__(self, 'values', _frozen_array(values))

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, vertex: int) -> float:
        return float(self.values[vertex])

    def check_size(self, vertex_count: int) -> 'RadiusVector':
        if len(self) != vertex_count:
            raise SurfaceFormatError(f"Radius vector has {len(self)} entries, surface has {vertex_count} vertices")
        return self

    def with_updates(self, updates: Mapping[int, float]) -> 'RadiusVector':
        """Create a new vector with some entries replaced (immutable update pattern)."""
        values = self.values.copy()
        for vertex, radius in updates.items():
            values[vertex] = radius
        return RadiusVector(values)


@dataclass(frozen=True)
class GammaWeights:
    """gamma^a = I_a + I_b I_c for each vertex a of a face, I_a on the opposite edge."""
    face: Face
    values: Tuple[float, float, float]

    def at(self, vertex: int) -> float:
        return self.values[self.face.index(vertex)]

    @property
    def nonnegative(self) -> bool:
        return min(self.values) >= 0.0


@dataclass(frozen=True, eq=False)
class MetricReport:
    """
    Intrinsic data induced by a radius vector.

    Angles and areas are only present for valid faces; curvature is NaN
    at every vertex incident to an invalid face.
    """
    edge_lengths: Mapping[Edge, float]
    face_angles: Mapping[Tuple[Face, int], float]
    face_valid: Mapping[Face, bool]
    face_area: Mapping[Face, float]
    curvature: np.ndarray
    is_packing_metric: bool

    @property
    def invalid_faces(self) -> Tuple[Face, ...]:
        return tuple(face for face, ok in self.face_valid.items() if not ok)

    def to_dict(self) -> dict:
        return {
            "edge_lengths": {f"{i}-{j}": length for (i, j), length in self.edge_lengths.items()},
            "face_angles": {f"{a}-{b}-{c}@{v}": angle for ((a, b, c), v), angle in self.face_angles.items()},
            "face_valid": {f"{a}-{b}-{c}": ok for (a, b, c), ok in self.face_valid.items()},
            "curvature": [None if np.isnan(k) else float(k) for k in self.curvature],
            "is_packing_metric": self.is_packing_metric,
        }


@dataclass(frozen=True, eq=False)
class UCoordinates:
    """u = ln r (Euclidean) or u = ln tanh(r/2) (hyperbolic)."""
    background: Background
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'values', _frozen_array(np.asarray(self.values, dtype=float).reshape(-1)))


@dataclass(frozen=True, eq=False)
class AngleJacobian:
    """matrix[a][b] = d theta_a / d u_b for the vertices of `face`, in face order."""
    face: Face
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'matrix', _frozen_array(self.matrix).reshape(3, 3))

    @property
    def max_eigenvalue(self) -> float:
        symmetric = 0.5 * (self.matrix + self.matrix.T)
        return float(np.linalg.eigvalsh(symmetric).max())


@dataclass(frozen=True)
class SolveStep:
    iteration: int
    residual: float
    step_size: float
    energy_gain: float


@dataclass(frozen=True)
class SolveOutcome:
    radii: RadiusVector
    iterations: int
    residual: float  # max |K - target| over A
    converged: bool
    history: Tuple[SolveStep, ...] = ()


@dataclass(frozen=True)
class PartitionAB:
    """V = A ⊔ B, A the curvature-controlled vertices, B the radius-controlled ones."""
    a: VertexSubset
    b: VertexSubset

    def __post_init__(self):
        if not len(self.a):
            raise PartitionError("Vertex set A must be nonempty")
        overlap = self.a.members & self.b.members
        if overlap:
            raise PartitionError(f"A and B overlap in {sorted(overlap)}")

    @classmethod
    def from_a(cls, a: Iterable[int], vertex_count: int) -> 'PartitionAB':
        a_set = frozenset(a)
        return cls(VertexSubset(a_set), VertexSubset(frozenset(range(vertex_count)) - a_set))

    def check_covers(self, vertex_count: int) -> 'PartitionAB':
        covered = self.a.members | self.b.members
        if covered != frozenset(range(vertex_count)):
            missing = sorted(frozenset(range(vertex_count)) - covered)
            extra = sorted(covered - frozenset(range(vertex_count)))
            raise PartitionError(f"A ⊔ B must equal all vertices: missing {missing}, unknown {extra}")
        return self


@dataclass(frozen=True)
class Violation:
    vertex: int
    r: float
    R: float


@dataclass(frozen=True)
class ComparisonVerdict:
    """Status of the Schwarz-Pick comparison for one pair of metrics."""
    hyp_radii_ok: bool  # R|_B >= r|_B
    hyp_curv_ok: bool  # K_R|_A >= K_r|_A
    conclusion_ok: bool  # R >= r
    violations: Tuple[Violation, ...]
    margins: Tuple[float, ...]  # R - r per vertex

    @property
    def violating_vertices(self) -> Tuple[int, ...]:
        return tuple(v.vertex for v in self.violations)

    @property
    def hypotheses_hold(self) -> bool:
        return self.hyp_radii_ok and self.hyp_curv_ok

    def to_dict(self) -> dict:
        return {
            "hyp_radii": self.hyp_radii_ok,
            "hyp_curv": self.hyp_curv_ok,
            "conclusion": self.conclusion_ok,
            "violations": [{"vertex": v.vertex, "r": v.r, "R": v.R} for v in self.violations],
        }


@dataclass(frozen=True)
class DoubledSurface:
    """A closed surface made of two copies of a disk glued along the boundary."""
    surface: WeightedSurface
    copy_maps: Tuple[Tuple[int, ...], Tuple[int, ...]]  # original vertex -> vertex of the double, per copy

    def extend_radii(self, radii: RadiusVector) -> RadiusVector:
        values = np.empty(self.surface.vertex_count)
        for copy_map in self.copy_maps:
            values[list(copy_map)] = radii.values
        return RadiusVector(values)

    def images(self, vertices: Iterable[int]) -> FrozenSet[int]:
        return frozenset(copy_map[v] for v in vertices for copy_map in self.copy_maps)


@dataclass(frozen=True)
class SolverOptions:
    """Configuration of the prescribed-curvature Newton solver."""
    tol: float = 1e-10
    max_iter: int = 100
    damping: float = 1.0  # initial step length of the line search
    min_step: float = 1e-12
    max_abs_u: float = 60.0  # |u| beyond this counts as divergence
    strict: bool = True  # raise MaxIterationsError instead of returning an unconverged outcome
    check_bounds: bool = True
    max_subset_enumeration: int = 12

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"Solver tolerance must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if not 0 < self.damping <= 1:
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")


@dataclass(frozen=True)
class QuadratureOptions:
    """Adaptive Gauss-Legendre settings for energy line integrals."""
    order: int = 16
    tol: float = 1e-10
    max_angle_step: float = 0.1  # radians of angle variation per initial piece
    max_depth: int = 30

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"Quadrature order must be at least 2, got {self.order}")


@dataclass(frozen=True)
class ComparisonTolerance:
    """
    Slack used by the comparison checker.

    Hypotheses pass when the difference is >= -hypothesis_slack; a conclusion
    violation is only reported when R falls short of r by more than conclusion_slack.
    """
    hypothesis_slack: float = 1e-9
    conclusion_slack: float = 1e-6

    def __post_init__(self):
        if self.hypothesis_slack < 0 or self.conclusion_slack < 0:
            raise ValueError("Comparison slacks must be nonnegative")


STRICT_COMPARISON = ComparisonTolerance(0.0, 0.0)

DEFAULT_SOLVER_OPTIONS = SolverOptions()
DEFAULT_QUADRATURE = QuadratureOptions()
