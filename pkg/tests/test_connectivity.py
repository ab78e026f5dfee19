import math

import numpy as np
import pytest

from jordankit.connectivity import (
    PathPolyline,
    SpecialPointOrigin,
    build_subdivision,
    connect,
    separating_polygon,
    side_rectangles,
    special_points,
)
from jordankit.curves import band_radius, circle, polygon_from_points, sample
from jordankit.errors import NotSameFaceError
from jordankit.oracle import grid_for, grid_path
from jordankit.primitives import Point, Tolerance
from jordankit.regions import RegionLabel, classify
from jordankit.simplifier import certify_simple
from jordankit.topology import PointLocation, contains, contains_many, distance_to_many

TAU = Tolerance()

UNIT_SQUARE = certify_simple(polygon_from_points([(0, 0), (1, 0), (1, 1), (0, 1)]))
BIG_SQUARE = certify_simple(polygon_from_points([(1, 1), (-1, 1), (-1, -1), (1, -1)]))


@pytest.fixture(scope="module")
def circle_setup():
    poly = certify_simple(sample(circle(), 256))
    eps = band_radius(circle(), poly.poly, 16)
    sub = build_subdivision(poly, eps, TAU)
    return poly, eps, sub


def _in_rectangle(corners, p, slack=1e-12):
    u = corners[1] - corners[0]
    v = corners[3] - corners[0]
    w = np.asarray(p, dtype=float) - corners[0]
    s = (w @ u) / (u @ u)
    t = (w @ v) / (v @ v)
    return -slack <= s <= 1 + slack and -slack <= t <= 1 + slack


class TestSideRectangles:
    def test_unit_side_corners(self):
        rects = side_rectangles(UNIT_SQUARE, 0.1)
        got = {tuple(np.round(c, 10)) for c in rects[0].corners}
        assert got == {(-0.2, -0.2), (1.2, -0.2), (1.2, 0.2), (-0.2, 0.2)}

    def test_dimensions_and_centering(self):
        rects = side_rectangles(BIG_SQUARE, 0.05)
        a, b = BIG_SQUARE.side_arrays()
        for r in rects:
            c = r.corners
            w = math.hypot(*(c[1] - c[0]))
            h = math.hypot(*(c[3] - c[0]))
            side_len = math.hypot(*(b[r.side_index] - a[r.side_index]))
            assert w == pytest.approx(side_len + 0.2)
            assert h == pytest.approx(0.2)
            mid_side = 0.5 * (a[r.side_index] + b[r.side_index])
            assert np.allclose(c.mean(axis=0), mid_side)

    def test_rectangle_contains_side_neighborhood(self):
        rects = side_rectangles(UNIT_SQUARE, 0.1)
        rng = np.random.default_rng(8)
        a, b = UNIT_SQUARE.side_arrays()
        for r in rects:
            # points within eps of the side, longitudinally inside the slab
            t = rng.random(50)
            off = rng.uniform(-0.1, 0.1, size=50)
            d = b[r.side_index] - a[r.side_index]
            n = np.array([-d[1], d[0]]) / math.hypot(*d)
            pts = a[r.side_index] + t[:, None] * d + off[:, None] * n
            for p in pts:
                assert _in_rectangle(r.corners, p)

    def test_union_covers_band_around_polygon(self, circle_setup):
        poly, eps, _ = circle_setup
        fine = circle().points(np.arange(4096) / 4096)
        rects = side_rectangles(poly, eps)
        corners = np.stack([r.corners for r in rects])
        for p in fine[::8]:
            assert any(_in_rectangle(c, p, slack=1e-9) for c in corners)

    def test_positive_eps_required(self):
        with pytest.raises(ValueError):
            side_rectangles(UNIT_SQUARE, 0.0)


class TestSpecialPoints:
    def test_square_corners_and_crossings(self):
        rects = side_rectangles(BIG_SQUARE, 0.1)
        sp = special_points(rects, BIG_SQUARE, TAU)
        locs = np.asarray([(s.location.x, s.location.y) for s in sp])
        # all strictly interior
        assert all(
            l is PointLocation.INSIDE for l in contains_many(BIG_SQUARE, locs, TAU)
        )
        # the inner crossings of adjacent side rectangles appear exactly once
        inner_corner = locs[np.all(np.isclose(np.abs(locs), 0.8, atol=1e-9), axis=1)]
        assert len(inner_corner) == 4
        # rectangle corners outside the polygon were dropped
        assert np.abs(locs).max() <= 1.0

    def test_connector_bound_for_rectangle_corners(self, circle_setup):
        poly, eps, sub = circle_setup
        for s in sub.specials:
            if s.origin is SpecialPointOrigin.RECTANGLE_VERTEX:
                length = math.hypot(
                    s.connector.b.x - s.connector.a.x, s.connector.b.y - s.connector.a.y
                )
                assert length <= 2 * math.sqrt(2) * eps + 1e-9

    def test_connectors_touch_polygon(self, circle_setup):
        poly, _, sub = circle_setup
        feet = np.asarray([(s.connector.b.x, s.connector.b.y) for s in sub.specials])
        assert distance_to_many(poly, feet).max() <= 1e-9


class TestSeparatingPolygon:
    def test_circle_excludes_curve(self, circle_setup):
        poly, eps, sub = circle_setup
        fine = circle().points(np.arange(64 * 256) / (64 * 256))
        sep = separating_polygon(poly, eps, Point(0, 0), TAU, curve_samples=fine, subdivision=sub)
        assert sep.diagnostics["curve_samples_inside"] == 0
        # certified simple and strictly inside the polygon
        assert contains(poly, sep.polygon.vertex(0), TAU) is PointLocation.INSIDE

    def test_square_shrinks_by_two_bands(self):
        eps = 0.1
        sub = build_subdivision(BIG_SQUARE, eps, TAU)
        sep = separating_polygon(BIG_SQUARE, eps, Point(0, 0), TAU, subdivision=sub)
        d = distance_to_many(BIG_SQUARE, sep.polygon.vertices)
        assert (d >= eps - 1e-9).all() and (d <= 4 * eps + 1e-9).all()

    def test_reference_point_in_band_rejected(self, circle_setup):
        poly, eps, sub = circle_setup
        with pytest.raises(ValueError):
            separating_polygon(poly, eps, Point(1.0, 0.0), TAU, subdivision=sub)

    def test_second_interior_point_inside(self, circle_setup):
        poly, eps, sub = circle_setup
        sep = separating_polygon(poly, eps, Point(0, 0), TAU, subdivision=sub)
        assert contains(sep.polygon, Point(0.3, 0.2), TAU) is PointLocation.INSIDE


class TestConnect:
    def test_circle_straight_path(self, circle_setup):
        poly, eps, sub = circle_setup
        path = connect(poly, eps, Point(0, 0), Point(0.5, 0), TAU, subdivision=sub)
        assert np.allclose(path.points[0], (0, 0))
        assert np.allclose(path.points[-1], (0.5, 0))
        # clearance above half the band radius along the whole path
        for k in range(len(path.points) - 1):
            seg = 0.5 * (path.points[k] + path.points[k + 1])
            assert distance_to_many(poly, seg.reshape(1, 2))[0] > eps / 2

    def test_identical_endpoints(self, circle_setup):
        poly, eps, sub = circle_setup
        path = connect(poly, eps, Point(0.2, 0.1), Point(0.2, 0.1), TAU, subdivision=sub)
        assert len(path.points) == 1

    def test_agrees_with_grid_oracle(self, circle_setup):
        poly, eps, sub = circle_setup
        a, b = Point(-0.4, 0.1), Point(0.45, -0.2)
        path = connect(poly, eps, a, b, TAU, subdivision=sub)
        assert path is not None
        assert grid_path(poly, eps, a, b, grid_for(poly, eps)) is not None

    def test_not_same_face_when_band_pinches(self):
        # dumbbell whose neck is thinner than the band: the subdivision
        # splits the interior, and the two lobes land in different faces
        pts = [
            (-3, -1), (-1, -1), (-1, -0.05), (1, -0.05), (1, -1), (3, -1),
            (3, 1), (1, 1), (1, 0.05), (-1, 0.05), (-1, 1), (-3, 1),
        ]
        poly = certify_simple(polygon_from_points(pts))
        eps = 0.12
        a, b = Point(-2, 0), Point(2, 0)
        assert classify(poly, eps, a, TAU) is RegionLabel.INTERIOR
        with pytest.raises(NotSameFaceError) as err:
            connect(poly, eps, a, b, TAU)
        assert err.value.face_a is not None and err.value.face_b is not None
        assert err.value.face_a["face"] != err.value.face_b["face"]
        # the grid oracle agrees that the free region is split
        assert grid_path(poly, eps, a, b, grid_for(poly, eps)) is None

    def test_misclassified_endpoint_rejected(self, circle_setup):
        poly, eps, sub = circle_setup
        with pytest.raises(ValueError):
            connect(poly, eps, Point(0, 0), Point(3, 0), TAU, subdivision=sub)


class TestPathPolyline:
    def test_consecutive_duplicates_rejected(self):
        with pytest.raises(ValueError):
            PathPolyline(np.asarray([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]))

    def test_single_point_allowed(self):
        p = PathPolyline(np.asarray([(0.5, 0.5)]))
        assert p.points.shape == (1, 2)
