"""
Data repository - unified data access interface.
Uses adapter pattern to support multiple data sources.
"""
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union

from src.data_loader.json_source import parse_radii, parse_surface, parse_vertex_values
from src.domain.models import RadiusVector, WeightedSurface

# Type alias for raw loader functions (path -> decoded document)
DataLoaderFunc = Callable[[Union[str, Path]], Dict[str, Any]]


def load_surface(source_func: DataLoaderFunc, source_path: Union[str, Path]) -> WeightedSurface:
    """
    Load a weighted surface using the injected loader.

    Args:
        source_func: Function that reads a document from a source
        source_path: Path to the surface file

    Returns:
        Validated WeightedSurface
    """
    return parse_surface(source_func(source_path))


def load_radii(
    source_func: DataLoaderFunc,
    source_path: Union[str, Path],
    surface: Optional[WeightedSurface] = None,
) -> RadiusVector:
    """Load a radius vector, checked against the surface's vertex count when one is given."""
    radii = parse_radii(source_func(source_path))
    if surface is not None:
        radii.check_size(surface.vertex_count)
    return radii


def load_vertex_values(
    source_func: DataLoaderFunc,
    source_path: Union[str, Path],
    key: str,
) -> Dict[int, float]:
    """Load a per-vertex value map stored under `key` ('fixed' or 'target')."""
    return parse_vertex_values(source_func(source_path), key)
