"""
Subcommand handlers. Each handler is a thin shell over library operations:
load inputs, call the library, print a table or JSON, return the exit code.

Vertex arguments and printed labels are 1-based; files are 0-based.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, FrozenSet, List

from src.comparison import build_counterexample, check_comparison, doubled_counterexample
from src.data_loader import (
    load_json,
    load_radii,
    load_surface,
    load_vertex_values,
    radii_payload,
    surface_payload,
    write_json,
)
from src.domain.complex import double
from src.domain.errors import CirclePackingError, NotAPackingMetricError, SurfaceFormatError
from src.domain.geometry import degeneration_scan, metric_report
from src.domain.models import (
    STRICT_COMPARISON,
    ComparisonTolerance,
    ComparisonVerdict,
    PartitionAB,
    RadiusVector,
    SolverOptions,
    VertexSubset,
    WeightedSurface,
)
from src.report import (
    convergence_table,
    curvature_table,
    edge_length_table,
    format_table,
    render_convergence,
    render_degeneration_scan,
    validity_table,
    write_figure,
)
from src.report.tables import vertex_label
from src.variational.solver import solve_prescribed_curvature

logger = logging.getLogger(__name__)

DEFAULT_EPS = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6"


# --- shared input helpers ---------------------------------------------------

def _load_surface(path: str) -> WeightedSurface:
    """Any structural problem with an input surface counts as malformed input."""
    try:
        return load_surface(load_json, path)
    except SurfaceFormatError:
        raise
    except CirclePackingError as exc:
        raise SurfaceFormatError(f"{path}: {exc}") from exc


def _load_radii(path: str, surface: WeightedSurface) -> RadiusVector:
    return load_radii(load_json, path, surface)


def _load_values(path: str, key: str, surface: WeightedSurface) -> Dict[int, float]:
    values = load_vertex_values(load_json, path, key)
    outside = sorted(v for v in values if not 0 <= v < surface.vertex_count)
    if outside:
        raise SurfaceFormatError(f"{path}: vertices {outside} are not on the surface")
    return values


def parse_vertex_labels(text: str, vertex_count: int) -> FrozenSet[int]:
    """'4' or '1,3' (1-based labels) -> 0-based vertex set."""
    vertices = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            label = int(token)
        except ValueError:
            raise SurfaceFormatError(f"Vertex label {token!r} is not an integer")
        if not 1 <= label <= vertex_count:
            raise SurfaceFormatError(f"Vertex label {label} is outside 1..{vertex_count}")
        vertices.add(label - 1)
    return frozenset(vertices)


def _parse_eps(text: str) -> List[float]:
    try:
        values = [float(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise SurfaceFormatError(f"--eps expects comma-separated numbers, got {text!r}")
    if not values or any(not eps > 0 for eps in values):
        raise SurfaceFormatError("--eps values must be positive")
    return values


def _labels(vertices) -> str:
    return "{" + ", ".join(vertex_label(v) for v in sorted(vertices)) + "}"


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def labelled_verdict(verdict: ComparisonVerdict) -> dict:
    """Verdict JSON with 1-based vertex labels."""
    payload = verdict.to_dict()
    for violation in payload["violations"]:
        violation["vertex"] += 1
    return payload


def _add_surface_and_radii(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-s", "--surface", required=True, help="surface JSON file")
    parser.add_argument("-r", "--radii", required=True, help="radius JSON file")


def _add_json_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="print full-precision JSON instead of a table")


# --- validate -----------------------------------------------------------------

def configure_validate(parser: argparse.ArgumentParser) -> None:
    _add_surface_and_radii(parser)
    _add_json_flag(parser)


def run_validate(args: argparse.Namespace) -> int:
    surface = _load_surface(args.surface)
    report = metric_report(surface, _load_radii(args.radii, surface))
    if args.json:
        _print_json({
            "face_valid": report.to_dict()["face_valid"],
            "is_packing_metric": report.is_packing_metric,
        })
    else:
        print(format_table(validity_table(report)))
        print(f"is_packing_metric: {report.is_packing_metric}")
    return 0 if report.is_packing_metric else 1


# --- curvature ----------------------------------------------------------------

def configure_curvature(parser: argparse.ArgumentParser) -> None:
    _add_surface_and_radii(parser)
    _add_json_flag(parser)


def run_curvature(args: argparse.Namespace) -> int:
    surface = _load_surface(args.surface)
    radii = _load_radii(args.radii, surface)
    report = metric_report(surface, radii)
    if not report.is_packing_metric:
        raise NotAPackingMetricError("r", report.invalid_faces[0])
    if args.json:
        _print_json(report.to_dict())
    else:
        print(format_table(curvature_table(surface, {"r": radii})))
    return 0


# --- solve --------------------------------------------------------------------

def configure_solve(parser: argparse.ArgumentParser) -> None:
    defaults = SolverOptions()
    parser.add_argument("-s", "--surface", required=True, help="surface JSON file")
    parser.add_argument("--fix", required=True, help='fixed radii: {"fixed": [[vertex, radius], ...]}')
    parser.add_argument("--target", required=True, help='target curvatures: {"target": [[vertex, K], ...]}')
    parser.add_argument("--tol", type=float, default=defaults.tol)
    parser.add_argument("--max-iter", type=int, default=defaults.max_iter)
    parser.add_argument("--damping", type=float, default=defaults.damping)
    parser.add_argument("--out", help="write the solution radius file here")
    parser.add_argument("--log", help="write the convergence log CSV here")
    parser.add_argument("--html", help="write a convergence chart here")
    _add_json_flag(parser)


def run_solve(args: argparse.Namespace) -> int:
    surface = _load_surface(args.surface)
    fixed = _load_values(args.fix, "fixed", surface)
    target = _load_values(args.target, "target", surface)
    try:
        options = SolverOptions(tol=args.tol, max_iter=args.max_iter, damping=args.damping, strict=False)
    except ValueError as exc:
        raise SurfaceFormatError(str(exc)) from exc

    outcome = solve_prescribed_curvature(surface, fixed, target, options)
    log = convergence_table(outcome)
    if args.out:
        write_json(args.out, radii_payload(outcome.radii))
    if args.log:
        Path(args.log).parent.mkdir(parents=True, exist_ok=True)
        log.to_csv(args.log, index=False)
    if args.html:
        write_figure(render_convergence(log), args.html)

    if args.json:
        _print_json({
            **radii_payload(outcome.radii),
            "iterations": outcome.iterations,
            "residual": outcome.residual,
            "converged": outcome.converged,
        })
    else:
        print(f"converged: {outcome.converged} after {outcome.iterations} iterations, residual {outcome.residual:.3e}")
        print(format_table(curvature_table(surface, {"solved": outcome.radii}).assign(r=outcome.radii.values)))
    if not outcome.converged:
        print(f"error: solver stopped with residual {outcome.residual:.3e} above tol {args.tol:.1e}", file=sys.stderr)
        return 1
    return 0


# --- compare ------------------------------------------------------------------

def configure_compare(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-s", "--surface", required=True, help="surface JSON file")
    parser.add_argument("--r", dest="small", required=True, help="radius file of r")
    parser.add_argument("--R", dest="large", required=True, help="radius file of R")
    parser.add_argument("--A", dest="a", required=True, help="curvature-controlled vertices, 1-based, comma-separated")
    parser.add_argument("--strict", action="store_true", help="compare with zero slack")


def run_compare(args: argparse.Namespace) -> int:
    surface = _load_surface(args.surface)
    r = _load_radii(args.small, surface)
    R = _load_radii(args.large, surface)
    a = parse_vertex_labels(args.a, surface.vertex_count)
    if not a:
        raise SurfaceFormatError("--A must name at least one vertex")
    tolerance = STRICT_COMPARISON if args.strict else ComparisonTolerance()
    verdict = check_comparison(surface, PartitionAB.from_a(a, surface.vertex_count), r, R, tolerance)
    _print_json(labelled_verdict(verdict))
    return 0 if verdict.conclusion_ok else 1


# --- counterexample -----------------------------------------------------------

def configure_counterexample(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--doubled", action="store_true", help="use the closed double of the disk")
    parser.add_argument("--out-dir", help="write surface.json, r.json and R.json here")
    _add_json_flag(parser)


def run_counterexample(args: argparse.Namespace) -> int:
    surface, r, R, partition = doubled_counterexample() if args.doubled else build_counterexample()
    verdict = check_comparison(surface, partition, r, R)
    if args.out_dir:
        out = Path(args.out_dir)
        write_json(out / "surface.json", surface_payload(surface))
        write_json(out / "r.json", radii_payload(r))
        write_json(out / "R.json", radii_payload(R))
    if args.json:
        _print_json({
            "curvature_r": metric_report(surface, r).to_dict()["curvature"],
            "curvature_R": metric_report(surface, R).to_dict()["curvature"],
            "verdict": labelled_verdict(verdict),
        })
    else:
        print(counterexample_text(surface, r, R, partition, verdict, args.doubled))
    return 0


def counterexample_text(
    surface: WeightedSurface,
    r: RadiusVector,
    R: RadiusVector,
    partition: PartitionAB,
    verdict: ComparisonVerdict,
    doubled: bool,
) -> str:
    t = surface.triangulation
    name = "Doubled counterexample" if doubled else "Counterexample disk"
    metrics = {"r": r, "R": R}
    curvature_r = metric_report(surface, r).curvature
    curvature_R = metric_report(surface, R).curvature
    lines = [
        f"{name}: {surface.background.value}, {t.vertex_count} vertices, {len(t.faces)} faces",
        f"A = {_labels(partition.a)}  B = {_labels(partition.b)}",
        "r = " + " ".join(f"{x:.5f}" for x in r.values),
        "R = " + " ".join(f"{x:.5f}" for x in R.values),
        "",
        "Edge lengths",
        format_table(edge_length_table(surface, metrics)),
        "",
        "Discrete curvature",
        format_table(curvature_table(surface, metrics)),
        "",
    ]
    for a in partition.a:
        lines.append(f"K_r({vertex_label(a)}) = {curvature_r[a]:.5f}")
        lines.append(f"K_R({vertex_label(a)}) = {curvature_R[a]:.5f}")
    lines.append(f"hypothesis R >= r on B: {_holds(verdict.hyp_radii_ok)}")
    lines.append(f"hypothesis K_R >= K_r on A: {_holds(verdict.hyp_curv_ok)}")
    if verdict.conclusion_ok:
        lines.append("verdict: HOLDS")
    for violation in verdict.violations:
        lines.append(
            f"verdict: VIOLATED at vertex {vertex_label(violation.vertex)} "
            f"with r = {violation.r:.5f} and R = {violation.R:.5f}"
        )
    return "\n".join(lines)


def _holds(ok: bool) -> str:
    return "holds" if ok else "fails"


# --- degenerate ---------------------------------------------------------------

def configure_degenerate(parser: argparse.ArgumentParser) -> None:
    _add_surface_and_radii(parser)
    parser.add_argument("--J", dest="subset", required=True, help="vertices to shrink, 1-based, comma-separated")
    parser.add_argument("--eps", default=DEFAULT_EPS, help="comma-separated radii for the vertices of J")
    parser.add_argument("--html", help="write a chart of the scan here")
    _add_json_flag(parser)


def run_degenerate(args: argparse.Namespace) -> int:
    surface = _load_surface(args.surface)
    radii = _load_radii(args.radii, surface)
    subset = VertexSubset(parse_vertex_labels(args.subset, surface.vertex_count))
    scan = degeneration_scan(surface, radii, subset, _parse_eps(args.eps))
    if args.html:
        write_figure(render_degeneration_scan(scan, ", ".join(vertex_label(v) for v in subset)), args.html)
    if args.json:
        _print_json(json.loads(scan.to_json(orient="records")))
    else:
        printable = scan.assign(eps=[f"{eps:g}" for eps in scan["eps"]])
        print(f"J = {_labels(subset)}")
        print(format_table(printable))
    return 0


# --- double -------------------------------------------------------------------

def configure_double(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-s", "--surface", required=True, help="surface JSON file with boundary")
    parser.add_argument("--out", help="write the doubled surface here instead of printing it")


def run_double(args: argparse.Namespace) -> int:
    doubled = double(_load_surface(args.surface))
    payload = surface_payload(doubled.surface)
    if args.out:
        write_json(args.out, payload)
    else:
        _print_json(payload)
    return 0
