"""Cubic curve evaluation, subdivision, flattening, and hit-testing."""
import math

import numpy as np
import pytest

from decisionlab.bezier import (
    CubicBezier,
    bounding_box,
    evaluate,
    flatten,
    flatten_with_params,
    hit_test,
    line_as_bezier,
    point_segment_distance,
    split,
)
from decisionlab.errors import ParameterOutOfRange

ARCH = CubicBezier((0, 0), (0, 8), (8, 8), (8, 0))


def random_curve(rng, scale=100.0):
    pts = rng.uniform(-scale, scale, size=(4, 2))
    return CubicBezier(*[tuple(p) for p in pts])


def brute_force_distance(curve, point, samples=10_000):
    """Dense-sampling oracle via the Bernstein polynomial in numpy."""
    t = np.linspace(0.0, 1.0, samples)
    mt = 1.0 - t
    w = np.stack([mt**3, 3 * mt**2 * t, 3 * mt * t**2, t**3], axis=1)
    control = np.array(curve.control_points)
    xy = w @ control
    return float(np.min(np.hypot(xy[:, 0] - point[0], xy[:, 1] - point[1])))


class TestEvaluate:
    def test_endpoints_exact(self):
        assert evaluate(ARCH, 0.0) == ARCH.p0
        assert evaluate(ARCH, 1.0) == ARCH.p3

    def test_midpoint_reference(self):
        # (P0 + 3P1 + 3P2 + P3) / 8
        assert evaluate(ARCH, 0.5) == (4.0, 6.0)

    def test_degenerate_point_curve(self):
        point = (3.0, -2.0)
        curve = CubicBezier(point, point, point, point)
        for t in (0.0, 0.25, 0.5, 0.99, 1.0):
            assert evaluate(curve, t) == pytest.approx(point, abs=1e-15)

    def test_parameter_range(self):
        with pytest.raises(ParameterOutOfRange):
            evaluate(ARCH, -0.01)
        with pytest.raises(ParameterOutOfRange):
            evaluate(ARCH, 1.01)

    def test_convex_hull_containment(self):
        # B(t) is a convex combination of the control points, so every
        # sample must sit within the hull (checked via half-planes).
        from itertools import combinations

        rng = np.random.default_rng(31)
        for _ in range(30):
            curve = random_curve(rng)
            control = np.array(curve.control_points)
            for t in rng.uniform(0, 1, size=10):
                p = np.array(evaluate(curve, float(t)))
                # point is in the hull iff some triangle of control points
                # contains it OR it lies on the hull boundary; use the
                # barycentric test against all 4 triangles.
                inside = False
                for tri in combinations(range(4), 3):
                    a, b, c = control[list(tri)]
                    m = np.column_stack([b - a, c - a])
                    if abs(np.linalg.det(m)) < 1e-12:
                        continue
                    lam = np.linalg.solve(m, p - a)
                    if lam[0] >= -1e-9 and lam[1] >= -1e-9 and lam.sum() <= 1 + 1e-9:
                        inside = True
                        break
                assert inside


class TestSplit:
    def test_continuity_at_split(self):
        left, right = split(ARCH, 0.5)
        assert left.p0 == ARCH.p0
        assert right.p3 == ARCH.p3
        assert left.p3 == right.p0
        assert left.p3 == pytest.approx(evaluate(ARCH, 0.5), abs=1e-12)

    def test_reparameterization_oracle(self):
        rng = np.random.default_rng(32)
        for _ in range(10):
            curve = random_curve(rng)
            t = float(rng.uniform(0.2, 0.8))
            left, right = split(curve, t)
            for u in np.linspace(0.0, 1.0, 41):
                u = float(u)
                assert evaluate(left, u) == pytest.approx(
                    evaluate(curve, t * u), abs=1e-9
                )
                assert evaluate(right, u) == pytest.approx(
                    evaluate(curve, t + (1 - t) * u), abs=1e-9
                )

    def test_degenerate_point_curve_splits_to_points(self):
        point = (1.0, 1.0)
        curve = CubicBezier(point, point, point, point)
        left, right = split(curve, 0.3)
        assert set(left.control_points) == {point}
        assert set(right.control_points) == {point}

    def test_parameter_strictly_inside(self):
        for t in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ParameterOutOfRange):
                split(ARCH, t)


class TestFlatten:
    def test_collinear_control_points_flatten_to_chord(self):
        line = line_as_bezier((0, 0), (10, 5))
        assert flatten(line, 0.25) == [(0.0, 0.0), (10.0, 5.0)]

    def test_vertices_lie_on_curve(self):
        rng = np.random.default_rng(33)
        for _ in range(10):
            curve = random_curve(rng)
            for t, point in flatten_with_params(curve, 0.25):
                assert point == pytest.approx(evaluate(curve, t), abs=1e-9)

    def test_endpoints_preserved(self):
        pts = flatten(ARCH, 0.1)
        assert pts[0] == ARCH.p0
        assert pts[-1] == ARCH.p3

    def test_tighter_tolerance_never_drops_vertices(self):
        rng = np.random.default_rng(34)
        for _ in range(10):
            curve = random_curve(rng)
            counts = [len(flatten(curve, tol)) for tol in (2.0, 0.5, 0.1, 0.02)]
            assert counts == sorted(counts)

    def test_polyline_stays_within_tolerance(self):
        rng = np.random.default_rng(35)
        for _ in range(10):
            curve = random_curve(rng)
            tol = 0.25
            vertices = flatten_with_params(curve, tol)
            for (t0, p0), (t1, p1) in zip(vertices, vertices[1:]):
                # the true curve midpoint of each span stays near the segment
                mid = evaluate(curve, (t0 + t1) / 2)
                assert point_segment_distance(mid, p0, p1) <= tol

    def test_split_halves_cover_original(self):
        left, right = split(ARCH, 0.5)
        joined = flatten(left, 0.1)[:-1] + flatten(right, 0.1)
        original = flatten(ARCH, 0.1)
        # both polylines trace the same curve within tolerance
        for p in original:
            assert min(
                point_segment_distance(p, a, b) for a, b in zip(joined, joined[1:])
            ) <= 0.1 + 1e-9

    def test_tolerance_positive(self):
        with pytest.raises(ValueError):
            flatten(ARCH, 0.0)


class TestHitTest:
    def test_on_curve_point_hits(self):
        point = evaluate(ARCH, 0.37)
        result = hit_test(ARCH, point, threshold=0.5)
        assert result.hit
        assert result.distance <= 0.25

    def test_far_point_misses(self):
        x0, y0, x1, y1 = bounding_box(ARCH)
        result = hit_test(ARCH, (x1 + 100.0, y1 + 100.0), threshold=1.0)
        assert not result.hit
        assert result.distance > 100.0

    def test_distance_matches_brute_force(self):
        rng = np.random.default_rng(36)
        for _ in range(25):
            curve = random_curve(rng, scale=50.0)
            point = tuple(rng.uniform(-60, 60, size=2))
            reported = hit_test(curve, point, threshold=5.0).distance
            oracle = brute_force_distance(curve, point)
            assert abs(reported - oracle) <= 2 * 0.25

    def test_straight_line_equals_segment_distance(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            a = tuple(rng.uniform(-50, 50, size=2))
            b = tuple(rng.uniform(-50, 50, size=2))
            point = tuple(rng.uniform(-60, 60, size=2))
            via_curve = hit_test(line_as_bezier(a, b), point, threshold=1.0).distance
            direct = point_segment_distance(point, a, b)
            assert abs(via_curve - direct) <= 1e-9

    def test_threshold_positive(self):
        with pytest.raises(ValueError):
            hit_test(ARCH, (0, 0), threshold=0.0)


class TestLineAsBezier:
    def test_anchors_at_chord_thirds(self):
        curve = line_as_bezier((0, 0), (9, 3))
        assert curve.p1 == (3.0, 1.0)
        assert curve.p2 == (6.0, 2.0)

    def test_curve_traces_the_segment(self):
        curve = line_as_bezier((1, 2), (7, -4))
        for t in np.linspace(0, 1, 11):
            x, y = evaluate(curve, float(t))
            # parametric point of the segment at the cubic's own pace
            assert point_segment_distance((x, y), (1, 2), (7, -4)) <= 1e-12
