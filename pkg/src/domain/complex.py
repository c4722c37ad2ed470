"""
Simplicial combinatorics of triangulated surfaces - pure functions only.
Builds validated triangulations, counts subcomplexes, enumerates links and doubles disks.
"""
import logging
from collections import Counter, defaultdict
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.domain.errors import (
    AlreadyClosedError,
    DisconnectedError,
    EdgeInTooManyFacesError,
    NonSimplicialError,
    NotASurfaceError,
    SurfaceFormatError,
)
from src.domain.models import (
    Background,
    DoubledSurface,
    Edge,
    Face,
    PartitionAB,
    Triangulation,
    VertexSubset,
    WeightedSurface,
    edge_key,
    face_key,
)

logger = logging.getLogger(__name__)

InversiveInput = Union[Mapping[Edge, float], Iterable[Sequence[float]]]


def build_triangulation(face_list: Iterable[Sequence[int]], vertex_count: int = None) -> Triangulation:
    """
    Build a validated triangulation from a list of vertex triples.

    Args:
        face_list: Faces as triples of 0-based vertex indices
        vertex_count: Number of vertices; defaults to 1 + the largest index

    Returns:
        Triangulation with derived edges and boundary classification

    Raises:
        NonSimplicialError: repeated vertex in a face or duplicated face
        EdgeInTooManyFacesError: an edge lies in three or more faces
        DisconnectedError: the 1-skeleton is not connected
        NotASurfaceError: a vertex star is neither a disk nor a half-disk
    """
    faces: List[Face] = []
    seen = set()
    for raw in face_list:
        triple = [int(v) for v in raw]
        if len(triple) != 3:
            raise SurfaceFormatError(f"Face {triple} does not have three vertices")
        if min(triple) < 0:
            raise SurfaceFormatError(f"Face {triple} has a negative vertex index")
        if len(set(triple)) != 3:
            raise NonSimplicialError(f"Face {triple} repeats a vertex")
        key = face_key(triple)
        if key in seen:
            raise NonSimplicialError(f"Face {list(key)} appears more than once")
        seen.add(key)
        faces.append(key)

    if not faces:
        raise SurfaceFormatError("Face list is empty")

    max_index = max(max(face) for face in faces)
    if vertex_count is None:
        vertex_count = max_index + 1
    elif vertex_count <= max_index:
        raise SurfaceFormatError(f"Face index {max_index} exceeds vertex count {vertex_count}")

    counts = edge_face_count_of(faces)
    crowded = sorted(edge for edge, n in counts.items() if n > 2)
    if crowded:
        raise EdgeInTooManyFacesError(f"Edges {crowded} lie in more than two faces")

    edges = tuple(sorted(counts))
    _check_connected(vertex_count, edges)
    _check_vertex_stars(vertex_count, faces)

    boundary_edges = frozenset(edge for edge, n in counts.items() if n == 1)
    boundary_vertices = frozenset(v for edge in boundary_edges for v in edge)

    return Triangulation(
        vertex_count=vertex_count,
        faces=tuple(sorted(faces)),
        edges=edges,
        boundary_edges=boundary_edges,
        boundary_vertices=boundary_vertices,
    )


def make_surface(
    face_list: Iterable[Sequence[int]],
    background: Union[Background, str],
    inversive: InversiveInput,
    vertex_count: int = None,
) -> WeightedSurface:
    """
    Build a weighted triangulated surface.

    `inversive` is either a mapping edge -> I or an iterable of (i, j, I) triples.
    Every edge needs exactly one value; there is no default.
    """
    triangulation = build_triangulation(face_list, vertex_count)
    if isinstance(inversive, Mapping):
        values = {edge_key(int(i), int(j)): float(value) for (i, j), value in inversive.items()}
    else:
        values = {}
        for entry in inversive:
            if len(entry) != 3:
                raise SurfaceFormatError(f"Inversive entry {list(entry)} is not of the form [i, j, value]")
            i, j, value = entry
            key = edge_key(int(i), int(j))
            if key in values:
                raise SurfaceFormatError(f"Edge {list(key)} has more than one inversive distance")
            values[key] = float(value)
    return WeightedSurface(triangulation=triangulation, background=Background.parse(background), inversive=values)


def edge_face_count_of(faces: Iterable[Face]) -> Dict[Edge, int]:
    counts: Counter = Counter()
    for a, b, c in faces:
        counts[edge_key(a, b)] += 1
        counts[edge_key(b, c)] += 1
        counts[edge_key(a, c)] += 1
    return dict(counts)


def edge_face_count(t: Triangulation) -> Dict[Edge, int]:
    """Number of faces containing each edge (1 on the boundary, 2 inside)."""
    return edge_face_count_of(t.faces)


def neighbors(t: Triangulation, vertex: int) -> Tuple[int, ...]:
    """Vertices adjacent to `vertex` in the 1-skeleton."""
    return tuple(sorted({u for edge in t.edges if vertex in edge for u in edge if u != vertex}))


def euler_characteristic_of_subcomplex(t: Triangulation, subset: VertexSubset) -> int:
    """
    Euler characteristic of F_J, the subcomplex of simplices with all vertices in J.

    chi = |J| - #edges inside J + #faces inside J
    """
    members = subset.check_within(t.vertex_count).members
    edges_in = sum(1 for i, j in t.edges if i in members and j in members)
    faces_in = sum(1 for face in t.faces if all(v in members for v in face))
    return len(members) - edges_in + faces_in


def euler_characteristic(t: Triangulation) -> int:
    return t.vertex_count - len(t.edges) + len(t.faces)


def link(t: Triangulation, subset: VertexSubset) -> List[Tuple[Face, int]]:
    """All pairs (face, v) with v in J and face ∩ J = {v}."""
    members = subset.check_within(t.vertex_count).members
    pairs = []
    for face in t.faces:
        inside = [v for v in face if v in members]
        if len(inside) == 1:
            pairs.append((face, inside[0]))
    return pairs


def faces_by_incidence(t: Triangulation, subset: VertexSubset) -> Tuple[Tuple[Face, ...], Tuple[Face, ...], Tuple[Face, ...]]:
    """Faces with exactly one, two and three vertices in J."""
    members = subset.check_within(t.vertex_count).members
    buckets: Dict[int, List[Face]] = defaultdict(list)
    for face in t.faces:
        buckets[sum(1 for v in face if v in members)].append(face)
    return tuple(buckets[1]), tuple(buckets[2]), tuple(buckets[3])


def disk_partition(t: Triangulation) -> PartitionAB:
    """A = interior vertices, B = boundary vertices."""
    if t.is_closed:
        raise AlreadyClosedError("A closed surface has no boundary to fix")
    return PartitionAB(VertexSubset(t.interior_vertices), VertexSubset(t.boundary_vertices))


def double(disk: WeightedSurface) -> DoubledSurface:
    """
    Glue two copies of a surface with boundary along the identity of the boundary.

    Copy 0 keeps the original indices. Interior vertices of copy 1 are numbered
    after them, in increasing order of the original index. Inversive distances
    are copied edge for edge.

    Raises NonSimplicialError when the glued complex would repeat a face or put
    an edge in four faces.
    """
    t = disk.triangulation
    if t.is_closed:
        raise AlreadyClosedError("Cannot double a surface without boundary")

    boundary = t.boundary_vertices
    for face in t.faces:
        if all(v in boundary for v in face):
            raise NonSimplicialError(
                f"Double would not be simplicial: face {list(face)} has every vertex on the boundary"
            )
    for i, j in t.edges:
        if (i, j) not in t.boundary_edges and i in boundary and j in boundary:
            raise NonSimplicialError(
                f"Double would not be simplicial: interior edge ({i}, {j}) joins two boundary vertices"
            )

    copy0 = tuple(range(t.vertex_count))
    interior = sorted(t.interior_vertices)
    second = {v: t.vertex_count + n for n, v in enumerate(interior)}
    copy1 = tuple(second.get(v, v) for v in range(t.vertex_count))

    faces = list(t.faces)
    # mirrored orientation on the second copy
    faces += [(copy1[c], copy1[b], copy1[a]) for a, b, c in t.faces]

    inversive: Dict[Edge, float] = {}
    for (i, j), value in disk.inversive.items():
        inversive[edge_key(i, j)] = value
        inversive[edge_key(copy1[i], copy1[j])] = value

    doubled = make_surface(faces, disk.background, inversive, vertex_count=t.vertex_count + len(interior))
    logger.debug("Doubled surface: %d vertices, %d faces", doubled.vertex_count, len(doubled.triangulation.faces))
    return DoubledSurface(surface=doubled, copy_maps=(copy0, copy1))


def _check_connected(vertex_count: int, edges: Sequence[Edge]) -> None:
    rows = np.array([i for i, _ in edges], dtype=np.int64)
    cols = np.array([j for _, j in edges], dtype=np.int64)
    graph = coo_matrix((np.ones(len(edges)), (rows, cols)), shape=(vertex_count, vertex_count))
    n_components, _ = connected_components(graph, directed=False)
    if n_components != 1:
        raise DisconnectedError(f"1-skeleton has {n_components} connected components")


def _check_vertex_stars(vertex_count: int, faces: Sequence[Face]) -> None:
    """Each vertex link must be a single cycle (interior) or a single path (boundary)."""
    link_edges: Dict[int, List[Edge]] = defaultdict(list)
    for a, b, c in faces:
        link_edges[a].append((b, c))
        link_edges[b].append((a, c))
        link_edges[c].append((a, b))

    for vertex in range(vertex_count):
        pieces = link_edges[vertex]
        adjacency: Dict[int, List[int]] = defaultdict(list)
        for x, y in pieces:
            adjacency[x].append(y)
            adjacency[y].append(x)
        start = next(iter(adjacency))
        reached = {start}
        stack = [start]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in reached:
                    reached.add(nxt)
                    stack.append(nxt)
        if len(reached) != len(adjacency):
            raise NotASurfaceError(f"Star of vertex {vertex} is not a disk or half-disk (pinched vertex)")
