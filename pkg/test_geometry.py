"""Tests for lengths, validity criteria, angles, curvature and degeneration limits."""
import numpy as np
import pytest

from conftest import BACKGROUNDS, OCTAHEDRON_FACES, TETRAHEDRON_FACES, random_concave_weights
from src.domain.complex import make_surface, neighbors
from src.domain.errors import (
    DegenerateTriangleError,
    InversiveOutOfRangeError,
    NotAPackingMetricError,
    NotConcaveRegionError,
)
from src.domain.geometry import (
    TWO_PI,
    angles_from_lengths,
    check_concave_region,
    classify_intersection,
    curvature_lower_bound_check,
    degeneration_limit,
    degeneration_scan,
    edge_length,
    face_lengths,
    gamma_weights,
    inner_angles,
    intersection_angle,
    metric_report,
    quartic,
    require_packing_metric,
    subset_bound_violations,
    triangle_area,
    triangle_valid_direct,
    triangle_valid_polynomial,
    validity_polynomial,
)
from src.domain.models import RadiusVector, VertexSubset

LENGTHS_R = {(0, 1): 200.0, (0, 2): 200.0, (1, 2): 200.0, (0, 3): 255.0, (1, 3): 397.52358, (2, 3): 356.40567}
LENGTHS_BIG_R = {(0, 1): 350.0, (0, 2): 330.0, (1, 2): 460.0, (0, 3): 260.0, (1, 3): 606.71245, (2, 3): 518.55569}
CURVATURE_R = [2.37781, 4.59519, 4.00207, 4.73289]
CURVATURE_BIG_R = [1.21223, 5.21346, 4.51403, 4.76824]


class TestCounterexampleTables:
    def test_edge_lengths(self, counterexample):
        surface, r, R, _ = counterexample
        lengths_r = metric_report(surface, r).edge_lengths
        lengths_R = metric_report(surface, R).edge_lengths
        for edge, expected in LENGTHS_R.items():
            assert lengths_r[edge] == pytest.approx(expected, abs=5e-6)
        for edge, expected in LENGTHS_BIG_R.items():
            assert lengths_R[edge] == pytest.approx(expected, abs=5e-6)

    def test_curvatures(self, counterexample):
        surface, r, R, _ = counterexample
        np.testing.assert_allclose(metric_report(surface, r).curvature, CURVATURE_R, atol=5e-6)
        np.testing.assert_allclose(metric_report(surface, R).curvature, CURVATURE_BIG_R, atol=5e-6)

    def test_both_metrics_are_packing_metrics(self, counterexample):
        surface, r, R, _ = counterexample
        assert metric_report(surface, r).is_packing_metric
        assert metric_report(surface, R).is_packing_metric

    def test_boundary_vertices_use_two_pi(self, counterexample):
        # sum K = 2 pi V - pi F on any disk
        surface, r, R, _ = counterexample
        for radii in (r, R):
            assert metric_report(surface, radii).curvature.sum() == pytest.approx(5 * np.pi, abs=1e-9)

    def test_gamma_weights(self, counterexample):
        weights = gamma_weights(counterexample[0], (1, 2, 3))
        assert weights.values == (7.0, 7.0, 13.0)
        assert weights.at(3) == 13.0
        assert weights.nonnegative


class TestLengthsAndAngles:
    def test_euclidean_tangent_circles(self):
        assert edge_length("euclidean", 2.0, 3.0, 1.0) == pytest.approx(5.0)

    def test_euclidean_orthogonal_circles(self):
        assert edge_length("euclidean", 3.0, 4.0, 0.0) == pytest.approx(5.0)

    def test_hyperbolic_tangent_circles(self):
        assert edge_length("hyperbolic", 1.0, 1.0, 1.0) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_length_matches_cosine_law_form(self, background, rng):
        r_i, r_j = rng.uniform(0.1, 2.0, 50), rng.uniform(0.1, 2.0, 50)
        inversive = rng.uniform(-0.9, 3.0, 50)
        lengths = edge_length(background, r_i, r_j, inversive)
        if background == "euclidean":
            expected = np.sqrt(r_i ** 2 + r_j ** 2 + 2 * r_i * r_j * inversive)
        else:
            expected = np.arccosh(np.cosh(r_i) * np.cosh(r_j) + inversive * np.sinh(r_i) * np.sinh(r_j))
        np.testing.assert_allclose(lengths, expected, rtol=1e-10)
        np.testing.assert_allclose(lengths, edge_length(background, r_j, r_i, inversive), rtol=1e-14)

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_length_increases_with_inversive_distance(self, background, rng):
        r_i, r_j = rng.uniform(0.05, 3.0, 500), rng.uniform(0.05, 3.0, 500)
        inversive = rng.uniform(-0.95, 4.0, 500)
        shorter = edge_length(background, r_i, r_j, inversive)
        longer = edge_length(background, r_i, r_j, inversive + 0.05)
        assert np.all(longer > shorter)

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_length_increases_with_each_radius_when_not_obtuse(self, background, rng):
        r_i, r_j = rng.uniform(0.05, 3.0, 500), rng.uniform(0.05, 3.0, 500)
        inversive = rng.uniform(0.0, 4.0, 500)
        base = edge_length(background, r_i, r_j, inversive)
        assert np.all(edge_length(background, 1.01 * r_i, r_j, inversive) > base)
        assert np.all(edge_length(background, r_i, 1.01 * r_j, inversive) > base)

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_obtuse_pair_can_shorten_as_a_radius_grows(self, background):
        assert edge_length(background, 0.2, 2.0, -0.9) < edge_length(background, 0.1, 2.0, -0.9)

    def test_equilateral_euclidean_angles(self):
        assert inner_angles("euclidean", 1.0, 1.0, 1.0) == pytest.approx((np.pi / 3,) * 3)

    def test_right_triangle(self):
        theta = inner_angles("euclidean", 3.0, 4.0, 5.0)
        assert theta[2] == pytest.approx(np.pi / 2)
        assert sum(theta) == pytest.approx(np.pi)
        assert triangle_area("euclidean", 3.0, 4.0, 5.0) == pytest.approx(6.0)

    def test_hyperbolic_angle_sum_below_pi(self):
        theta = inner_angles("hyperbolic", 1.0, 1.2, 1.5)
        assert sum(theta) < np.pi
        assert triangle_area("hyperbolic", 1.0, 1.2, 1.5) == pytest.approx(np.pi - sum(theta))

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_degenerate_lengths(self, background):
        assert not triangle_valid_direct(1.0, 1.0, 3.0)
        with pytest.raises(DegenerateTriangleError):
            inner_angles(background, 1.0, 1.0, 3.0)
        assert np.isnan(angles_from_lengths(background, [1.0, 1.0, 3.0])).all()

    def test_small_angles_keep_precision(self):
        theta = inner_angles("euclidean", 1e-8, 1.0, 1.0)
        assert theta[0] == pytest.approx(1e-8, rel=1e-6)


class TestValidityOracle:
    @pytest.mark.parametrize("background, r_low, r_high", [
        ("euclidean", 0.01, 100.0),
        ("hyperbolic", 0.05, 3.0),
    ])
    def test_polynomial_agrees_with_triangle_inequality(self, background, r_low, r_high, rng):
        n = 10000
        radii = np.exp(rng.uniform(np.log(r_low), np.log(r_high), (n, 3)))
        inversive = rng.uniform(-0.99, 5.0, (n, 3))
        lengths = face_lengths(background, radii, inversive)
        direct = quartic(lengths) > 0
        polynomial = validity_polynomial(background, radii, inversive) > 0
        assert direct.any() and (~direct).any()
        assert np.array_equal(direct, polynomial)

    def test_euclidean_polynomial_is_quarter_quartic(self, rng):
        radii = rng.uniform(0.5, 2.0, (500, 3))
        inversive = rng.uniform(-0.5, 3.0, (500, 3))
        q = quartic(face_lengths("euclidean", radii, inversive))
        np.testing.assert_allclose(validity_polynomial("euclidean", radii, inversive), q / 4.0, rtol=1e-8, atol=1e-9)

    def test_single_face_wrapper(self, counterexample):
        surface, r, R, _ = counterexample
        for radii in (r, R):
            for face in surface.triangulation.faces:
                assert triangle_valid_polynomial(surface, face, radii.values[list(face)])

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_concave_weights_give_valid_faces(self, background, rng):
        for _ in range(200):
            weights = random_concave_weights(TETRAHEDRON_FACES, rng, low=-0.3)
            surface = make_surface(TETRAHEDRON_FACES, background, weights)
            radii = RadiusVector(np.exp(rng.uniform(np.log(0.01), np.log(5.0), 4)))
            assert metric_report(surface, radii).is_packing_metric


class TestMetricReport:
    @pytest.fixture
    def half_broken(self):
        weights = {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 5.0, (0, 3): 1.0, (2, 3): 1.0}
        surface = make_surface([[0, 1, 2], [0, 2, 3]], "euclidean", weights)
        return surface, RadiusVector([1.0, 0.1, 1.0, 5.0])

    def test_invalid_faces_are_reported(self, half_broken):
        surface, radii = half_broken
        report = metric_report(surface, radii)
        assert not report.is_packing_metric
        assert report.invalid_faces == ((0, 1, 2),)
        assert np.isnan(report.curvature[:3]).all()
        assert np.isfinite(report.curvature[3])
        assert ((0, 1, 2), 0) not in report.face_angles
        assert report.to_dict()["curvature"][0] is None

    def test_require_packing_metric(self, half_broken):
        surface, radii = half_broken
        with pytest.raises(NotAPackingMetricError) as info:
            require_packing_metric(surface, radii, "R")
        assert info.value.label == "R"
        assert info.value.face == (0, 1, 2)

    def test_wrong_radius_count(self, tetrahedron):
        with pytest.raises(ValueError):
            metric_report(tetrahedron(), RadiusVector([1.0, 1.0, 1.0]))

    def test_symmetric_tetrahedron_has_curvature_pi(self, tetrahedron):
        report = metric_report(tetrahedron("euclidean", 0.0), RadiusVector(np.ones(4)))
        np.testing.assert_allclose(report.curvature, np.pi)

    @pytest.mark.parametrize("faces", [TETRAHEDRON_FACES, OCTAHEDRON_FACES])
    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_gauss_bonnet(self, faces, background, rng):
        weights = random_concave_weights(faces, rng)
        surface = make_surface(faces, background, weights)
        radii = RadiusVector(rng.uniform(0.2, 2.0, surface.vertex_count))
        report = metric_report(surface, radii)
        expected = 2 * TWO_PI
        if background == "hyperbolic":
            expected += sum(report.face_area.values())
        assert report.curvature.sum() == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_growing_one_radius_raises_its_curvature(self, background, octahedron, rng):
        surface = octahedron(background, 0.5)
        for _ in range(20):
            radii = RadiusVector(rng.uniform(0.2, 2.0, 6))
            vertex = int(rng.integers(6))
            bigger = radii.with_updates({vertex: radii[vertex] * 1.05})
            before = metric_report(surface, radii).curvature
            after = metric_report(surface, bigger).curvature
            assert after[vertex] > before[vertex]
            for other in neighbors(surface.triangulation, vertex):
                assert after[other] < before[other]


class TestConcavityAndDegeneration:
    def test_intersection_angles(self):
        assert intersection_angle(0.0) == pytest.approx(np.pi / 2)
        assert intersection_angle(1.0) == 0.0
        with pytest.raises(InversiveOutOfRangeError):
            intersection_angle(1.5)

    @pytest.mark.parametrize("value, kind", [
        (-0.5, "obtuse"), (0.0, "orthogonal"), (0.5, "acute"), (1.0, "tangent"), (3.0, "disjoint"),
    ])
    def test_classify_intersection(self, value, kind):
        assert classify_intersection(value) == kind

    def test_counterexample_is_not_concave(self, counterexample):
        with pytest.raises(NotConcaveRegionError):
            check_concave_region(counterexample[0])

    def test_negative_gamma_is_not_concave(self, tetrahedron):
        with pytest.raises(NotConcaveRegionError):
            check_concave_region(tetrahedron("euclidean", -0.5))

    def test_orthogonal_tetrahedron_is_concave(self, tetrahedron):
        check_concave_region(tetrahedron("euclidean", 0.0))

    def test_degeneration_limit_single_vertex(self, tetrahedron):
        assert degeneration_limit(tetrahedron(), VertexSubset.of(0)) == pytest.approx(np.pi / 2)

    def test_degeneration_limit_whole_sphere(self, tetrahedron):
        assert degeneration_limit(tetrahedron(), VertexSubset.of(0, 1, 2, 3)) == pytest.approx(2 * TWO_PI)

    def test_degeneration_limit_needs_inversive_at_most_one(self, counterexample):
        with pytest.raises(InversiveOutOfRangeError):
            degeneration_limit(counterexample[0], VertexSubset.of(3))

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_lower_bound(self, background, tetrahedron):
        surface = tetrahedron(background, 0.0)
        radii = RadiusVector(np.ones(4))
        lhs, rhs, holds = curvature_lower_bound_check(surface, radii, VertexSubset.of(0))
        assert holds
        assert rhs == pytest.approx(np.pi / 2)
        assert lhs > rhs
        assert curvature_lower_bound_check(surface, radii, VertexSubset()) == (0.0, 0.0, True)

    @pytest.mark.parametrize("background", BACKGROUNDS)
    def test_lower_bound_on_random_metrics(self, background, octahedron, rng):
        surface = octahedron(background, 0.5)
        for _ in range(20):
            radii = RadiusVector(np.exp(rng.uniform(-3.0, 1.0, 6)))
            members = [v for v in range(6) if rng.random() < 0.5] or [0]
            _, _, holds = curvature_lower_bound_check(surface, radii, VertexSubset(frozenset(members)))
            assert holds

    def test_subset_bound_violations(self, tetrahedron):
        surface = tetrahedron()
        curvature = {0: 1.0, 1: 2.0}
        violations = subset_bound_violations(surface, curvature, [VertexSubset.of(0), VertexSubset.of(1)])
        assert [subset.members for subset, _, _ in violations] == [{0}]

    def test_scan_approaches_limit_from_above(self, tetrahedron):
        surface = tetrahedron("euclidean", 0.0)
        eps = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
        scan = degeneration_scan(surface, RadiusVector(np.ones(4)), VertexSubset.of(0), eps)
        assert list(scan.columns) == ["eps", "sum_curvature", "limit", "gap"]
        np.testing.assert_allclose(scan["limit"], np.pi / 2)
        assert (scan["gap"] > 0).all()
        assert scan["gap"].is_monotonic_decreasing
        assert scan["gap"].iloc[-1] < 1e-3

    def test_hyperbolic_scan_stays_above_limit(self, tetrahedron):
        surface = tetrahedron("hyperbolic", 0.0)
        eps = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
        scan = degeneration_scan(surface, RadiusVector(np.ones(4)), VertexSubset.of(0), eps)
        assert (scan["gap"] > 0).all()
        assert scan["gap"].iloc[-1] < 1e-3
