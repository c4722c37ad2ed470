"""
JSON writers mirroring the source formats.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from src.domain.models import RadiusVector, WeightedSurface

logger = logging.getLogger(__name__)


def surface_payload(surface: WeightedSurface) -> Dict[str, Any]:
    t = surface.triangulation
    return {
        "background": surface.background.value,
        "vertex_count": t.vertex_count,
        "faces": [list(face) for face in t.faces],
        "inversive": [[i, j, value] for (i, j), value in sorted(surface.inversive.items())],
    }


def radii_payload(radii: RadiusVector) -> Dict[str, Any]:
    return {"radii": [float(r) for r in radii.values]}


def vertex_values_payload(values: Mapping[int, float], key: str) -> Dict[str, Any]:
    return {key: [[int(v), float(x)] for v, x in sorted(values.items())]}


def write_json(target_path: Union[str, Path], payload: Mapping[str, Any]) -> Path:
    path = Path(target_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    logger.info("Wrote %s", path)
    return path
