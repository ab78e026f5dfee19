import math

import numpy as np
import pytest

from jordankit.curves import (
    EllipseCurve,
    FourierCurve,
    ParamPolygon,
    PolylineCurve,
    band_radius,
    circle,
    evaluate,
    injectivity_gap,
    mesh,
    polygon_from_points,
    refine_until,
    require_resolution,
    sample,
)
from jordankit.errors import ConstructionError, ResolutionError

SQUARE_PTS = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]


class TestEvaluate:
    def test_circle_t0(self):
        p = evaluate(circle(), 0.0)
        assert math.isclose(p.x, 1.0) and abs(p.y) < 1e-15

    def test_circle_quarter(self):
        p = evaluate(circle(), 0.25)
        assert abs(p.x) < 1e-15 and math.isclose(p.y, 1.0)

    def test_periodicity(self):
        p = evaluate(circle(), 1.25)
        assert abs(p.x) < 1e-9 and math.isclose(p.y, 1.0)


class TestSample:
    def test_circle_n4_square(self):
        poly = sample(circle(), 4)
        assert np.allclose(poly.vertices, [(1, 0), (0, 1), (-1, 0), (0, -1)], atol=1e-15)
        assert np.allclose(poly.params, [0, 0.25, 0.5, 0.75])

    def test_n3_sampling_conditions_forced(self):
        poly = sample(circle(), 3)
        assert poly.params[-1] - poly.params[0] == pytest.approx(2 / 3)
        assert np.allclose(np.diff(poly.params), 1 / 3)

    def test_ellipse_vertices_match_direct_evaluation(self):
        curve = EllipseCurve(2.0, 1.0)
        poly = sample(curve, 8)
        for i in range(8):
            p = evaluate(curve, i / 8)
            assert math.isclose(poly.vertices[i, 0], p.x, abs_tol=1e-12)
            assert math.isclose(poly.vertices[i, 1], p.y, abs_tol=1e-12)

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            sample(circle(), 2)


class TestMesh:
    def test_square(self):
        assert mesh(sample(circle(), 4)) == pytest.approx(math.sqrt(2.0))

    def test_monotone_refinement_on_circle(self):
        for n in (8, 32, 128):
            assert mesh(sample(circle(), 2 * n)) < mesh(sample(circle(), n))

    def test_circle_chord_closed_form(self):
        assert mesh(sample(circle(), 1000)) == pytest.approx(2 * math.sin(math.pi / 1000), abs=1e-9)


class TestRefineUntil:
    def test_circle_reaches_1024(self):
        poly = refine_until(circle(), 0.01, n0=4)
        assert poly.n == 1024
        assert mesh(poly) <= 0.01
        assert mesh(sample(circle(), 512)) > 0.01

    def test_coarse_target_returns_initial(self):
        square = PolylineCurve(SQUARE_PTS)
        poly = refine_until(square, 2.5, n0=4)  # longest side is 2
        assert poly.n == 4

    def test_zero_target_rejected(self):
        with pytest.raises(ValueError):
            refine_until(circle(), 0.0)

    def test_unreachable_target_hits_cap(self):
        with pytest.raises(ConstructionError):
            refine_until(circle(), 1e-12, n0=4, max_doublings=6)


class TestBandRadius:
    def test_circle_n4_quarter_arc(self):
        # deviation over a quarter arc peaks at the far endpoint: sqrt(2)
        poly = sample(circle(), 4)
        assert band_radius(circle(), poly, 64) == pytest.approx(2 * math.sqrt(2.0), rel=1e-12)

    def test_circle_n1000_closed_form(self):
        # per-interval deviation on a circle is the full chord 2*sin(pi/n)
        poly = sample(circle(), 1000)
        assert band_radius(circle(), poly, 16) == pytest.approx(
            2 * (2 * math.sin(math.pi / 1000)), rel=1e-12
        )

    def test_polyline_at_own_vertices_gives_twice_mesh(self):
        square = PolylineCurve(SQUARE_PTS)
        poly = ParamPolygon(square.pts, square.vertex_params())
        assert band_radius(square, poly, 32) == pytest.approx(2 * mesh(poly), rel=1e-12)

    def test_rejects_single_subsample(self):
        with pytest.raises(ValueError):
            band_radius(circle(), sample(circle(), 8), 1)

    def test_rejects_foreign_polygon(self):
        poly = polygon_from_points([(0, 0), (5, 0), (0, 5)])
        with pytest.raises(ValueError):
            band_radius(circle(), poly, 8)


class TestInjectivityGap:
    def test_circle_quarter_separation(self):
        assert injectivity_gap(circle(), 0.25, 512) == pytest.approx(math.sqrt(2.0), rel=1e-9)

    def test_circle_antipodal(self):
        assert injectivity_gap(circle(), 0.5, 512) == pytest.approx(2.0, rel=1e-9)

    def test_doubly_traversed_circle_has_zero_gap(self):
        # x = cos(4 pi t), y = sin(4 pi t): same point at t and t + 1/2
        doubled = FourierCurve(0.0, [0, 1], [0, 0], 0.0, [0, 0], [0, 1])
        gap = injectivity_gap(doubled, 0.5, 256)
        assert gap <= 1e-12
        with pytest.raises(ResolutionError):
            require_resolution(0.01, gap)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            injectivity_gap(circle(), 0.0, 64)
        with pytest.raises(ValueError):
            injectivity_gap(circle(), 0.25, 4)


class TestSamplingInvariants:
    def test_vertices_are_evaluator_outputs(self):
        curve = EllipseCurve(1.5, 0.7, center=(0.3, -0.2), rotation=0.4)
        poly = sample(curve, 97)
        assert np.allclose(poly.vertices, curve.points(poly.params), atol=0)

    def test_param_gap_shrinks_under_doubling(self):
        gaps = [np.max(np.diff(sample(circle(), n).params)) for n in (8, 16, 32, 64)]
        assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))

    def test_close_vertices_have_close_parameters(self):
        # vertex pairs closer than the certified gap sit at circular
        # parameter distance below s (finite check with a 10% guard for the
        # grid overshoot of the gap estimate)
        rng = np.random.default_rng(3)
        for _ in range(5):
            coeff = rng.normal(0, 0.1, size=4)
            curve = FourierCurve(0.0, [1, coeff[0]], [0, coeff[1]], 0.0, [0, coeff[2]], [1, coeff[3]])
            s = 0.2
            gap = injectivity_gap(curve, s, 512)
            poly = sample(curve, 257)
            v = poly.vertices
            d = np.hypot(v[:, None, 0] - v[None, :, 0], v[:, None, 1] - v[None, :, 1])
            t = poly.params
            dt = np.abs(t[:, None] - t[None, :])
            circ = np.minimum(dt, 1 - dt)
            close = d < 0.9 * gap
            assert (circ[close] < s).all()


class TestParamPolygonValidation:
    def test_needs_three_vertices(self):
        with pytest.raises(ValueError):
            ParamPolygon([(0, 0), (1, 0)], [0.0, 0.6])

    def test_span_must_exceed_half_period(self):
        with pytest.raises(ValueError):
            ParamPolygon([(0, 0), (1, 0), (0, 1)], [0.0, 0.2, 0.4])

    def test_gap_must_stay_within_half_period(self):
        with pytest.raises(ValueError):
            ParamPolygon([(0, 0), (1, 0), (0, 1)], [0.0, 0.7, 0.9])

    def test_params_strictly_increasing_in_unit_interval(self):
        with pytest.raises(ValueError):
            ParamPolygon([(0, 0), (1, 0), (0, 1)], [0.0, 0.6, 0.6])
        with pytest.raises(ValueError):
            ParamPolygon([(0, 0), (1, 0), (0, 1)], [0.0, 0.6, 1.0])

    def test_consecutive_duplicate_vertices_rejected(self):
        with pytest.raises(ValueError):
            ParamPolygon([(0, 0), (0, 0), (0, 1)], [0.0, 0.3, 0.8])
