import math

import numpy as np
import pytest

from jordankit.curves import (
    FourierCurve,
    ParamPolygon,
    PolylineCurve,
    band_radius,
    circle,
    injectivity_gap,
    sample,
)
from jordankit.errors import ConstructionError
from jordankit.primitives import Point, Tolerance
from jordankit.regions import (
    RegionLabel,
    WitnessReport,
    check_separation,
    classify,
    classify_many,
    interior_witness,
)
from jordankit.simplifier import certify_simple
from jordankit.topology import distance_to, polyline_distance

TAU = Tolerance()


@pytest.fixture(scope="module")
def circle_poly():
    poly = certify_simple(sample(circle(), 1024))
    eps = band_radius(circle(), poly.poly, 16)
    return poly, eps


class TestClassify:
    def test_origin_interior(self, circle_poly):
        poly, eps = circle_poly
        assert classify(poly, eps, Point(0, 0), TAU) is RegionLabel.INTERIOR

    def test_far_point_exterior(self, circle_poly):
        poly, eps = circle_poly
        assert classify(poly, eps, Point(3, 0), TAU) is RegionLabel.EXTERIOR

    def test_curve_point_in_band(self, circle_poly):
        poly, eps = circle_poly
        assert classify(poly, eps, Point(1, 0), TAU) is RegionLabel.BOUNDARY_BAND

    def test_band_monotone_in_eps(self, circle_poly):
        poly, eps = circle_poly
        rng = np.random.default_rng(2)
        pts = rng.uniform(-1.5, 1.5, size=(300, 2))
        small = classify_many(poly, eps, pts, TAU)
        large = classify_many(poly, 3 * eps, pts, TAU)
        for s, l in zip(small, large):
            if s is RegionLabel.BOUNDARY_BAND:
                assert l is RegionLabel.BOUNDARY_BAND

    def test_label_depends_only_on_distance_and_containment(self, circle_poly):
        poly, eps = circle_poly
        for p in [(0.2, 0.1), (0.99, 0.0), (1.5, 1.5)]:
            lab = classify(poly, eps, Point(*p), TAU)
            assert lab in (RegionLabel.INTERIOR, RegionLabel.EXTERIOR, RegionLabel.BOUNDARY_BAND)

    def test_eps_must_be_positive(self, circle_poly):
        poly, _ = circle_poly
        with pytest.raises(ValueError):
            classify(poly, 0.0, Point(0, 0), TAU)


class TestInteriorWitness:
    def test_circle_witness_near_center(self, circle_poly):
        poly, eps = circle_poly
        report = interior_witness(poly, TAU, eps=eps)
        assert math.hypot(report.E.x, report.E.y) <= 2 * eps
        assert report.clearance == pytest.approx(1.0, abs=3 * eps)
        assert classify(poly, eps, report.E, TAU) is RegionLabel.INTERIOR

    def test_square_witness(self):
        square = PolylineCurve([(1, 1), (-1, 1), (-1, -1), (1, -1)])
        poly = certify_simple(ParamPolygon(square.pts, square.vertex_params()))
        report = interior_witness(poly, TAU)
        assert math.hypot(report.E.x, report.E.y) < 0.02
        assert report.clearance == pytest.approx(1.0, abs=0.02)
        assert report.diameter_indices == (0, 2)

    def test_clearance_is_reproducible(self, circle_poly):
        # the reported clearance must match an independent recomputation
        poly, _ = circle_poly
        report = interior_witness(poly, TAU)
        from jordankit.topology import split_chains

        a, b = report.diameter_indices
        chains = split_chains(poly, a, b, TAU)
        e = np.asarray([report.E.x, report.E.y])
        d_left = polyline_distance(chains.left, e)
        d_right = polyline_distance(chains.right, e)
        assert min(d_left, d_right) == pytest.approx(report.clearance, rel=1e-9)
        assert abs(d_left - d_right) <= 1e-6 * (1 + report.clearance)

    def test_e_between_c_and_d(self, circle_poly):
        poly, _ = circle_poly
        r = interior_witness(poly, TAU)
        lo = min(r.C.x, r.D.x) - 1e-12
        hi = max(r.C.x, r.D.x) + 1e-12
        # C, D, E are collinear on the midline; compare along it
        g = np.asarray([r.gamma.b.x - r.gamma.a.x, r.gamma.b.y - r.gamma.a.y])
        g = g / math.hypot(*g)
        tc = np.asarray([r.C.x, r.C.y]) @ g
        td = np.asarray([r.D.x, r.D.y]) @ g
        te = np.asarray([r.E.x, r.E.y]) @ g
        assert min(tc, td) < te < max(tc, td)

    def test_fuzz_clearance_exceeds_band(self):
        rng = np.random.default_rng(6)
        for _ in range(5):
            c = rng.normal(0, 0.2, size=4)
            curve = FourierCurve(0.0, [1, c[0]], [0, c[1]], 0.0, [0, c[2]], [1, c[3]])
            poly = certify_simple(sample(curve, 512))
            eps = band_radius(curve, poly.poly, 16)
            gap = injectivity_gap(curve, 0.05, 256)
            if eps < gap / 2:
                report = interior_witness(poly, TAU, eps=eps)
                assert report.clearance > eps


class TestCheckSeparation:
    def test_straight_segment_circle(self, circle_poly):
        poly, eps = circle_poly
        p = check_separation(poly, eps, np.asarray([(0.0, 0.0), (3.0, 0.0)]), TAU)
        assert p.x == pytest.approx(1.0, abs=2 * eps)
        assert abs(p.y) < 1e-12
        assert distance_to(poly, p) <= 1e-9

    def test_staircase_polyline(self):
        square = PolylineCurve([(1, 1), (-1, 1), (-1, -1), (1, -1)])
        poly = certify_simple(ParamPolygon(square.pts, square.vertex_params()))
        arc = np.asarray([(0, 0), (0.5, 0), (0.5, 0.5), (2.0, 0.5), (2.0, 2.5)])
        p = check_separation(poly, 0.05, arc, TAU)
        assert distance_to(poly, p) <= 1e-9

    def test_first_crossing_along_arc(self, circle_poly):
        poly, eps = circle_poly
        # arc that exits right then wanders: the reported point is the first exit
        arc = np.asarray([(0.0, 0.0), (2.5, 0.0), (2.5, 2.5)])
        p = check_separation(poly, eps, arc, TAU)
        assert p.y == pytest.approx(0.0, abs=1e-12)
        assert p.x > 0

    def test_interior_arc_rejected(self, circle_poly):
        poly, eps = circle_poly
        with pytest.raises(ValueError):
            check_separation(poly, eps, np.asarray([(0.0, 0.0), (0.2, 0.1)]), TAU)

    def test_band_endpoint_rejected(self, circle_poly):
        poly, eps = circle_poly
        with pytest.raises(ValueError):
            check_separation(poly, eps, np.asarray([(1.0, 0.0), (3.0, 0.0)]), TAU)


class TestWitnessReportShape:
    def test_fields(self, circle_poly):
        poly, _ = circle_poly
        r = interior_witness(poly, TAU)
        assert isinstance(r, WitnessReport)
        for p in (r.A, r.B, r.C, r.D, r.E):
            assert isinstance(p, Point)
        assert r.clearance > 0
