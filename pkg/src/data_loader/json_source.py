"""
JSON data source adapter for surfaces, radius vectors and per-vertex values.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from src.domain.complex import make_surface
from src.domain.errors import SurfaceFormatError
from src.domain.models import RadiusVector, WeightedSurface

logger = logging.getLogger(__name__)


def load_json(source_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a JSON object from disk.

    Raises:
        FileNotFoundError: the path does not exist
        SurfaceFormatError: the file is not a JSON object
    """
    with open(source_path, 'r') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SurfaceFormatError(f"{source_path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise SurfaceFormatError(f"{source_path}: expected a JSON object at the top level")
    logger.debug("Loaded %s", source_path)
    return data


def parse_surface(data: Mapping[str, Any]) -> WeightedSurface:
    """
    Build a weighted surface from

    {
        "background": "euclidean" | "hyperbolic",
        "faces": [[i, j, k], ...],
        "inversive": [[i, j, value], ...],
        "vertex_count": N            (optional)
    }
    """
    missing = [key for key in ("background", "faces", "inversive") if key not in data]
    if missing:
        raise SurfaceFormatError(f"Surface file lacks the keys {missing}")
    faces, inversive = data["faces"], data["inversive"]
    if not isinstance(faces, list) or not isinstance(inversive, list):
        raise SurfaceFormatError("'faces' and 'inversive' must be lists")
    try:
        faces = [[_as_index(v) for v in face] for face in faces]
    except TypeError:
        raise SurfaceFormatError("Every face must be a list of three vertex indices")
    for entry in inversive:
        if not isinstance(entry, list) or len(entry) != 3 or not _is_number(entry[2]):
            raise SurfaceFormatError(f"Inversive entry {entry!r} is not of the form [i, j, value]")
        _as_index(entry[0])
        _as_index(entry[1])
    vertex_count = data.get("vertex_count")
    if vertex_count is not None:
        vertex_count = _as_index(vertex_count)
    return make_surface(faces, data["background"], inversive, vertex_count)


def parse_radii(data: Mapping[str, Any]) -> RadiusVector:
    """{"radii": [r_0, ..., r_{N-1}]}"""
    radii = data.get("radii")
    if not isinstance(radii, list) or not all(_is_number(x) for x in radii):
        raise SurfaceFormatError("Radius file must hold a list of numbers under 'radii'")
    return RadiusVector(radii)


def parse_vertex_values(data: Mapping[str, Any], key: str) -> Dict[int, float]:
    """{key: [[vertex, value], ...]}, e.g. fixed radii or target curvatures."""
    entries = data.get(key)
    if not isinstance(entries, list):
        raise SurfaceFormatError(f"Expected a list of [vertex, value] pairs under {key!r}")
    values: Dict[int, float] = {}
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 2 or not _is_number(entry[1]):
            raise SurfaceFormatError(f"Entry {entry!r} under {key!r} is not a [vertex, value] pair")
        vertex = _as_index(entry[0])
        if vertex in values:
            raise SurfaceFormatError(f"Vertex {vertex} appears twice under {key!r}")
        values[vertex] = float(entry[1])
    return values


def _as_index(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SurfaceFormatError(f"Vertex index {value!r} is not an integer")
    return value


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)
