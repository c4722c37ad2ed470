from .json_source import load_json, parse_radii, parse_surface, parse_vertex_values
from .json_sink import radii_payload, surface_payload, vertex_values_payload, write_json
from .repository import load_radii, load_surface, load_vertex_values

__all__ = [
    'load_json',
    'parse_radii',
    'parse_surface',
    'parse_vertex_values',
    'radii_payload',
    'surface_payload',
    'vertex_values_payload',
    'write_json',
    'load_radii',
    'load_surface',
    'load_vertex_values',
]
