"""
Inversive Distance Circle Packing Toolkit - Main Application Entry Point.

This is the composition root that wires together all modules:
- Data loading (surface, radius and vertex-value files)
- Command registry
- Geometry, variational solver and comparison checks
- Report tables and charts

Usage:
    python app.py counterexample
    python app.py curvature -s data/counterexample_surface.json -r data/counterexample_r.json
"""
import sys

from src.cli import run


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
