"""End-to-end tests of the command line, driven through run(argv)."""
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.cli import build_parser, get_all_commands, get_command, run
from src.cli.commands import parse_vertex_labels
from src.domain.errors import SurfaceFormatError

DATA = Path(__file__).parent / "data"
SURFACE = str(DATA / "counterexample_surface.json")
SMALL = str(DATA / "counterexample_r.json")
LARGE = str(DATA / "counterexample_R.json")
TETRA = str(DATA / "tetrahedron_hyperbolic.json")
TETRA_RADII = str(DATA / "tetrahedron_radii.json")


def radii_file(tmp_path, values, name="radii.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"radii": values}))
    return str(path)


class TestRegistry:
    def test_all_subcommands_are_registered(self):
        assert list(get_all_commands()) == [
            "validate", "curvature", "solve", "compare", "counterexample", "degenerate", "double",
        ]

    def test_unknown_command_lookup(self):
        with pytest.raises(KeyError):
            get_command("plot")

    def test_parser_dispatches_to_handler(self):
        args = build_parser().parse_args(["counterexample", "--doubled"])
        assert args.handler is get_command("counterexample").handler
        assert args.doubled


class TestCounterexampleCommand:
    def test_matches_golden_output(self, capsys):
        assert run(["counterexample"]) == 0
        expected = (DATA / "golden" / "counterexample.txt").read_text()
        assert capsys.readouterr().out == expected

    def test_json(self, capsys):
        assert run(["counterexample", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["curvature_r"][3] == pytest.approx(4.73289, abs=1e-5)
        assert payload["curvature_R"][3] == pytest.approx(4.76824, abs=1e-5)
        assert payload["verdict"]["violations"] == [{"vertex": 4, "r": 155.0, "R": 150.0}]

    def test_doubled(self, capsys):
        assert run(["counterexample", "--doubled"]) == 0
        out = capsys.readouterr().out
        assert "5 vertices, 6 faces" in out
        assert "A = {4, 5}" in out
        assert "VIOLATED at vertex 4 " in out
        assert "VIOLATED at vertex 5 " in out

    def test_written_files_feed_compare(self, tmp_path, capsys):
        assert run(["counterexample", "--out-dir", str(tmp_path / "ce")]) == 0
        capsys.readouterr()
        ce = tmp_path / "ce"
        code = run(["compare", "-s", str(ce / "surface.json"), "--r", str(ce / "r.json"),
                    "--R", str(ce / "R.json"), "--A", "4"])
        assert code == 1
        assert json.loads(capsys.readouterr().out)["violations"][0]["vertex"] == 4


class TestCompare:
    def test_counterexample_violates(self, capsys):
        assert run(["compare", "-s", SURFACE, "--r", SMALL, "--R", LARGE, "--A", "4"]) == 1
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["hyp_radii"] is True
        assert verdict["hyp_curv"] is True
        assert verdict["conclusion"] is False
        assert [v["vertex"] for v in verdict["violations"]] == [4]

    def test_metric_against_itself(self, capsys):
        assert run(["compare", "-s", SURFACE, "--r", SMALL, "--R", SMALL, "--A", "4", "--strict"]) == 0
        assert json.loads(capsys.readouterr().out)["conclusion"] is True

    @pytest.mark.parametrize("labels", ["0", "5", "x", ","])
    def test_bad_vertex_labels(self, labels, capsys):
        assert run(["compare", "-s", SURFACE, "--r", SMALL, "--R", LARGE, "--A", labels]) == 2
        assert capsys.readouterr().err.startswith("error:")


class TestValidateAndCurvature:
    def test_valid_metric(self, capsys):
        assert run(["validate", "-s", SURFACE, "-r", SMALL]) == 0
        assert "is_packing_metric: True" in capsys.readouterr().out

    def test_invalid_metric(self, tmp_path, capsys):
        radii = radii_file(tmp_path, [0.01, 10.0, 1.0, 10.0])
        assert run(["validate", "-s", SURFACE, "-r", radii, "--json"]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["is_packing_metric"] is False

    def test_curvature_table(self, capsys):
        assert run(["curvature", "-s", SURFACE, "-r", SMALL]) == 0
        out = capsys.readouterr().out
        for value in ("2.37781", "4.59519", "4.00207", "4.73289"):
            assert value in out

    def test_curvature_json_sums_to_gauss_bonnet(self, capsys):
        assert run(["curvature", "-s", SURFACE, "-r", SMALL, "--json"]) == 0
        assert sum(json.loads(capsys.readouterr().out)["curvature"]) == pytest.approx(5 * np.pi)

    def test_curvature_of_degenerate_metric(self, tmp_path, capsys):
        radii = radii_file(tmp_path, [0.01, 10.0, 1.0, 10.0])
        assert run(["curvature", "-s", SURFACE, "-r", radii]) == 1
        assert "not a circle packing metric" in capsys.readouterr().err


class TestSolve:
    def test_writes_solution_and_log(self, tmp_path, capsys):
        out, log, html = tmp_path / "solved.json", tmp_path / "logs" / "solve.csv", tmp_path / "solve.html"
        code = run(["solve", "-s", TETRA, "--fix", str(DATA / "tetrahedron_fixed.json"),
                    "--target", str(DATA / "tetrahedron_target.json"),
                    "--out", str(out), "--log", str(log), "--html", str(html), "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["converged"] is True

        radii = json.loads(out.read_text())["radii"]
        assert radii[0] == pytest.approx(1.0)
        np.testing.assert_allclose(radii[2:], radii[1], rtol=1e-9)

        table = pd.read_csv(log)
        assert list(table.columns) == ["iteration", "residual", "step_size", "energy_gain"]
        assert len(table) == payload["iterations"]
        assert html.exists()

        assert run(["curvature", "-s", TETRA, "-r", str(out), "--json"]) == 0
        curvature = json.loads(capsys.readouterr().out)["curvature"]
        np.testing.assert_allclose(curvature[1:], 2.5, atol=1e-9)

    def test_iteration_budget_exhausted(self, capsys):
        code = run(["solve", "-s", TETRA, "--fix", str(DATA / "tetrahedron_fixed.json"),
                    "--target", str(DATA / "tetrahedron_target.json"), "--max-iter", "1"])
        assert code == 1
        assert "converged: False" in capsys.readouterr().out

    def test_infeasible_target(self, tmp_path, capsys):
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"target": [[1, 1.0], [2, 1.0], [3, 1.0]]}))
        code = run(["solve", "-s", TETRA, "--fix", str(DATA / "tetrahedron_fixed.json"), "--target", str(target)])
        assert code == 1
        assert "degeneration limit" in capsys.readouterr().err

    def test_target_vertex_off_the_surface(self, tmp_path):
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"target": [[1, 2.5], [2, 2.5], [3, 2.5], [7, 2.5]]}))
        assert run(["solve", "-s", TETRA, "--fix", str(DATA / "tetrahedron_fixed.json"), "--target", str(target)]) == 2

    def test_partition_gap_is_malformed(self, tmp_path):
        target = tmp_path / "target.json"
        target.write_text(json.dumps({"target": [[1, 2.5], [2, 2.5]]}))
        assert run(["solve", "-s", TETRA, "--fix", str(DATA / "tetrahedron_fixed.json"), "--target", str(target)]) == 2


class TestDegenerateAndDouble:
    def test_scan_approaches_limit(self, capsys):
        assert run(["degenerate", "-s", TETRA, "-r", TETRA_RADII, "--J", "4", "--json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert [row["eps"] for row in rows] == [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
        assert all(row["limit"] == pytest.approx(np.pi / 2) for row in rows)
        assert abs(rows[-1]["gap"]) < 1e-3

    def test_scan_table_and_chart(self, tmp_path, capsys):
        html = tmp_path / "scan.html"
        assert run(["degenerate", "-s", TETRA, "-r", TETRA_RADII, "--J", "2,3", "--eps", "0.5,0.05",
                    "--html", str(html)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("J = {2, 3}")
        assert html.exists()

    @pytest.mark.parametrize("eps", ["0,1e-3", "a", ""])
    def test_bad_eps(self, eps):
        assert run(["degenerate", "-s", TETRA, "-r", TETRA_RADII, "--J", "4", "--eps", eps]) == 2

    def test_double_prints_closed_surface(self, capsys):
        assert run(["double", "-s", SURFACE]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vertex_count"] == 5
        assert len(payload["faces"]) == 6

    def test_double_of_closed_surface_fails(self, capsys):
        assert run(["double", "-s", TETRA]) == 1
        assert "error:" in capsys.readouterr().err

    def test_double_to_file(self, tmp_path):
        out = tmp_path / "double.json"
        assert run(["double", "-s", SURFACE, "--out", str(out)]) == 0
        assert json.loads(out.read_text())["background"] == "euclidean"


class TestMalformedInput:
    def test_missing_file(self, tmp_path, capsys):
        assert run(["curvature", "-s", str(tmp_path / "absent.json"), "-r", SMALL]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_invalid_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(["curvature", "-s", str(bad), "-r", SMALL]) == 2

    def test_radius_count_mismatch(self, tmp_path):
        assert run(["curvature", "-s", SURFACE, "-r", radii_file(tmp_path, [1.0, 1.0])]) == 2

    def test_structural_surface_error(self, tmp_path):
        surface = tmp_path / "pinched.json"
        surface.write_text(json.dumps({
            "background": "euclidean",
            "faces": [[0, 1, 2], [0, 3, 4]],
            "inversive": [[0, 1, 1], [1, 2, 1], [0, 2, 1], [0, 3, 1], [3, 4, 1], [0, 4, 1]],
        }))
        assert run(["double", "-s", str(surface)]) == 2

    @pytest.mark.parametrize("argv", [[], ["plot"], ["curvature", "-s", SURFACE]])
    def test_bad_arguments(self, argv):
        assert run(argv) == 2

    def test_help(self, capsys):
        assert run(["--help"]) == 0
        assert "1-based" in capsys.readouterr().out


class TestVertexLabels:
    def test_one_based_to_zero_based(self):
        assert parse_vertex_labels("1, 3,4", 4) == {0, 2, 3}

    @pytest.mark.parametrize("text", ["0", "5", "1.5", "one"])
    def test_rejects_bad_labels(self, text):
        with pytest.raises(SurfaceFormatError):
            parse_vertex_labels(text, 4)
