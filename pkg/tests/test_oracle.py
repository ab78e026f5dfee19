import numpy as np
import pytest

from jordankit.curves import ParamPolygon, band_radius, circle, polygon_from_points, sample
from jordankit.oracle import GridSpec, grid_for, grid_path, naive_self_intersections, winding_number
from jordankit.primitives import Tolerance
from jordankit.simplifier import IntersectionKind, certify_simple, find_illegal_intersection
from jordankit.curves import FourierCurve

TAU = Tolerance()

CCW_SQUARE = polygon_from_points([(1, 1), (-1, 1), (-1, -1), (1, -1)])
CW_SQUARE = polygon_from_points([(1, 1), (1, -1), (-1, -1), (-1, 1)])


def dumbbell(neck=0.08):
    # two fat lobes joined by a thin neck around y = 0
    pts = [
        (-3, -1), (-1, -1), (-1, -neck), (1, -neck), (1, -1), (3, -1),
        (3, 1), (1, 1), (1, neck), (-1, neck), (-1, 1), (-3, 1),
    ]
    return certify_simple(polygon_from_points(pts))


class TestWindingNumber:
    def test_ccw_square(self):
        assert winding_number(CCW_SQUARE, (0, 0), TAU) == 1

    def test_outside(self):
        assert winding_number(CCW_SQUARE, (3, 0), TAU) == 0

    def test_cw_square(self):
        assert winding_number(CW_SQUARE, (0, 0), TAU) == -1

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            winding_number(CCW_SQUARE, (1, 0), TAU)


class TestNaiveSelfIntersections:
    def test_square_empty(self):
        assert naive_self_intersections(CCW_SQUARE, TAU) == []

    def test_bowtie_single_cross(self):
        bow = ParamPolygon([(0, 0), (2, 2), (2, 0), (0, 2)], [0.0, 0.25, 0.5, 0.75])
        hits = naive_self_intersections(bow, TAU)
        assert len(hits) == 1
        assert hits[0].kind is IntersectionKind.NON_ADJACENT_CROSS
        assert (hits[0].i, hits[0].j) == (0, 2)

    def test_first_element_matches_production_scan(self):
        limacon = FourierCurve(1.0, [1, 1], [0, 0], 0.0, [0, 0], [1, 1])
        for n in (128, 512):
            poly = sample(limacon, n)
            hits = naive_self_intersections(poly, TAU)
            first = find_illegal_intersection(poly, TAU)
            assert hits and first is not None
            assert (hits[0].kind, hits[0].i, hits[0].j) == (first.kind, first.i, first.j)
            assert abs(hits[0].witness.x - first.witness.x) < 1e-9
            assert abs(hits[0].witness.y - first.witness.y) < 1e-9

    def test_empty_iff_simple(self):
        rng = np.random.default_rng(12)
        from jordankit.topology import is_simple

        for _ in range(8):
            c = rng.normal(0, 0.35, size=4)
            curve = FourierCurve(0.0, [1, c[0]], [0, c[1]], 0.0, [0, c[2]], [1, c[3]])
            poly = sample(curve, 100)
            assert (naive_self_intersections(poly, TAU) == []) == is_simple(poly, TAU)


class TestGridPath:
    def test_circle_center_to_offset(self):
        poly = certify_simple(sample(circle(), 256))
        eps = band_radius(circle(), poly.poly, 16)
        path = grid_path(poly, eps, (0, 0), (0.5, 0), grid_for(poly, eps))
        assert path is not None
        assert len(path) >= 2

    def test_same_cell_trivial_path(self):
        poly = certify_simple(sample(circle(), 256))
        eps = band_radius(circle(), poly.poly, 16)
        path = grid_path(poly, eps, (0.0, 0.0), (1e-9, 0.0), grid_for(poly, eps))
        assert path is not None and len(path) == 1

    def test_pinched_interior_with_fat_band(self):
        # when the band radius exceeds the neck half-width the free cells
        # cannot connect the lobes: exactly the failure the resolution rule
        # (band below half the injectivity gap) exists to prevent
        poly = dumbbell(neck=0.08)
        blocked = grid_path(poly, 0.2, (-2, 0), (2, 0), grid_for(poly, 0.2))
        assert blocked is None
        open_path = grid_path(poly, 0.02, (-2, 0), (2, 0), grid_for(poly, 0.02))
        assert open_path is not None

    def test_monotone_in_eps(self):
        poly = dumbbell(neck=0.3)
        g = grid_for(poly, 0.1)  # fine enough for both band radii
        assert grid_path(poly, 0.2, (-2, 0), (2, 0), g) is not None
        # reachable at a coarse band implies reachable at a finer one
        assert grid_path(poly, 0.1, (-2, 0), (2, 0), g) is not None

    def test_cell_size_validation(self):
        poly = certify_simple(sample(circle(), 64))
        with pytest.raises(ValueError):
            grid_path(poly, 0.1, (0, 0), (0.1, 0), GridSpec(0.05, (-2, -2), (2, 2)))

    def test_margin_validation(self):
        poly = certify_simple(sample(circle(), 64))
        with pytest.raises(ValueError):
            grid_path(poly, 0.4, (0, 0), (0.1, 0), GridSpec(0.1, (-1, -1), (1, 1)))

    def test_interior_precondition(self):
        poly = certify_simple(sample(circle(), 256))
        eps = band_radius(circle(), poly.poly, 16)
        with pytest.raises(ValueError):
            grid_path(poly, eps, (0, 0), (3, 0), grid_for(poly, eps))
