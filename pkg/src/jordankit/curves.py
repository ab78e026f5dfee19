"""Closed 1-periodic curves and their parameter samplings.

A curve is an evaluator t -> (x, y) defined for every real t with period 1,
injective modulo 1.  Sampling it at n increasing parameters produces a
closed polygon whose vertices sit on the curve and whose parameters span
more than half a period with every gap below half a period; those two
sampling conditions are what every downstream construction relies on.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConstructionError, ResolutionError
from .primitives import Point

# The parameter-gap condition is strict in principle; the loop-cutting rule
# keeps the complement branch exactly at the half-period boundary, so the
# checks carry a hair of slack.
PARAM_SLACK = 1e-12

TWO_PI = 2.0 * math.pi


class ClosedCurve:
    """Abstract 1-periodic plane curve."""

    def points(self, ts: np.ndarray) -> np.ndarray:
        """Evaluate at an array of parameters; returns an (n, 2) array."""
        raise NotImplementedError

    def point(self, t: float) -> Point:
        x, y = self.points(np.asarray([t], dtype=float))[0]
        return Point(float(x), float(y))


class FourierCurve(ClosedCurve):
    """Coordinates given by finite cosine/sine series in 2*pi*t."""

    def __init__(self, x_a0, x_cos, x_sin, y_a0, y_cos, y_sin):
        self.x_a0 = float(x_a0)
        self.y_a0 = float(y_a0)
        self.x_cos = np.asarray(x_cos, dtype=float)
        self.x_sin = np.asarray(x_sin, dtype=float)
        self.y_cos = np.asarray(y_cos, dtype=float)
        self.y_sin = np.asarray(y_sin, dtype=float)
        if len(self.x_cos) != len(self.x_sin) or len(self.y_cos) != len(self.y_sin):
            raise ValueError("cos/sin coefficient lists must have equal length per axis")

    def points(self, ts):
        ts = np.asarray(ts, dtype=float)
        out = np.empty(ts.shape + (2,), dtype=float)
        for axis, (a0, ac, asn) in enumerate(
            ((self.x_a0, self.x_cos, self.x_sin), (self.y_a0, self.y_cos, self.y_sin))
        ):
            k = np.arange(1, len(ac) + 1, dtype=float)
            ang = TWO_PI * np.multiply.outer(ts, k)
            out[..., axis] = a0 + np.cos(ang) @ ac + np.sin(ang) @ asn
        return out


class EllipseCurve(ClosedCurve):
    def __init__(self, a, b, center=(0.0, 0.0), rotation=0.0):
        if a <= 0 or b <= 0:
            raise ValueError("semi-axes must be positive")
        self.a = float(a)
        self.b = float(b)
        self.center = (float(center[0]), float(center[1]))
        self.rotation = float(rotation)

    def points(self, ts):
        ts = np.asarray(ts, dtype=float)
        ang = TWO_PI * ts
        u = self.a * np.cos(ang)
        v = self.b * np.sin(ang)
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return np.stack(
            [self.center[0] + c * u - s * v, self.center[1] + s * u + c * v], axis=-1
        )


def circle(radius=1.0, center=(0.0, 0.0)) -> EllipseCurve:
    return EllipseCurve(radius, radius, center)


class PolylineCurve(ClosedCurve):
    """A closed polyline re-parameterized by normalized cumulative arclength.

    ``points`` interpolates linearly between the given vertices; the closing
    edge from the last vertex back to the first is implicit.
    """

    def __init__(self, pts):
        pts = np.asarray(pts, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
            raise ValueError("polyline curve needs at least 3 (x, y) vertices")
        if not np.isfinite(pts).all():
            raise ValueError("polyline vertices must be finite")
        seg = np.roll(pts, -1, axis=0) - pts
        lengths = np.hypot(seg[:, 0], seg[:, 1])
        if (lengths == 0.0).any():
            raise ValueError("polyline has a zero-length edge")
        self.pts = pts
        self._lengths = lengths
        self._cum = np.concatenate([[0.0], np.cumsum(lengths)])
        self.total_length = float(self._cum[-1])

    def points(self, ts):
        ts = np.asarray(ts, dtype=float)
        a = np.mod(ts, 1.0) * self.total_length
        idx = np.clip(np.searchsorted(self._cum, a, side="right") - 1, 0, len(self.pts) - 1)
        frac = (a - self._cum[idx]) / self._lengths[idx]
        nxt = np.roll(self.pts, -1, axis=0)
        return self.pts[idx] + frac[..., None] * (nxt[idx] - self.pts[idx])

    def vertex_params(self) -> np.ndarray:
        """Arclength parameters of the polyline's own vertices."""
        return self._cum[:-1] / self.total_length


class ParamPolygon:
    """Closed polygon P_1..P_n with strictly increasing parameters t_1..t_n.

    Invariants checked at construction: n >= 3, parameters in [0, 1) and
    strictly increasing, parameter span above half a period, every gap
    (including the closing one) at most half a period, and consecutive
    vertices distinct.  Closure P_{n+1} = P_1 is implicit.
    """

    def __init__(self, vertices, params):
        vertices = np.ascontiguousarray(vertices, dtype=float)
        params = np.ascontiguousarray(params, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2:
            raise ValueError("vertices must be an (n, 2) array")
        n = len(vertices)
        if n < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {n}")
        if params.shape != (n,):
            raise ValueError("params must match vertices in length")
        if not (np.isfinite(vertices).all() and np.isfinite(params).all()):
            raise ValueError("vertices and params must be finite")
        if params[0] < 0.0 or params[-1] >= 1.0:
            raise ValueError("params must lie in [0, 1)")
        gaps = np.diff(params)
        if (gaps <= 0.0).any():
            raise ValueError("params must be strictly increasing")
        if params[-1] - params[0] <= 0.5 - PARAM_SLACK:
            raise ValueError(
                f"parameter span {params[-1] - params[0]} does not exceed half a period"
            )
        if (gaps > 0.5 + PARAM_SLACK).any():
            raise ValueError("a parameter gap exceeds half a period")
        closing = np.roll(vertices, -1, axis=0) - vertices
        if (np.abs(closing).max(axis=1) == 0.0).any():
            raise ValueError("consecutive vertices must be distinct")
        vertices.setflags(write=False)
        params.setflags(write=False)
        self.vertices = vertices
        self.params = params

    @property
    def n(self) -> int:
        return len(self.vertices)

    def side_arrays(self):
        """(start, end) vertex arrays for the n sides, closing side included."""
        return self.vertices, np.roll(self.vertices, -1, axis=0)

    def side_lengths(self) -> np.ndarray:
        a, b = self.side_arrays()
        d = b - a
        return np.hypot(d[:, 0], d[:, 1])

    def param_gaps(self) -> np.ndarray:
        """All n circular parameter gaps; the last wraps through 1."""
        g = np.diff(self.params)
        return np.concatenate([g, [self.params[0] + 1.0 - self.params[-1]]])

    def vertex(self, i: int) -> Point:
        x, y = self.vertices[i]
        return Point(float(x), float(y))

    def __repr__(self):
        return f"ParamPolygon(n={self.n}, mesh={mesh(self):.6g})"


def polygon_from_points(points) -> ParamPolygon:
    """Wrap a plain closed point list as a polygon with uniform synthetic
    parameters (for polygons that do not come from sampling a curve)."""
    points = np.asarray(points, dtype=float)
    n = len(points)
    return ParamPolygon(points, np.arange(n, dtype=float) / n)


def evaluate(curve: ClosedCurve, t: float) -> Point:
    """K(t mod 1)."""
    return curve.point(math.fmod(t, 1.0) if t >= 0 else math.fmod(t, 1.0) + 1.0)


def sample(curve: ClosedCurve, n: int) -> ParamPolygon:
    """Sample at t_i = (i-1)/n for i = 1..n.

    The sampling conditions hold by construction for every n >= 3: the span
    is (n-1)/n > 1/2 and every gap is 1/n < 1/2.
    """
    if n < 3:
        raise ValueError(f"need at least 3 samples, got {n}")
    ts = np.arange(n, dtype=float) / n
    return ParamPolygon(curve.points(ts), ts)


def mesh(poly: ParamPolygon) -> float:
    """Maximum side length, closing side included."""
    return float(poly.side_lengths().max())


def refine_until(
    curve: ClosedCurve, eps_target: float, n0: int = 4, max_doublings: int = 24
) -> ParamPolygon:
    """Smallest sampling n = n0 * 2^k whose mesh is at most eps_target."""
    if not eps_target > 0.0:
        raise ValueError(f"eps_target must be positive, got {eps_target}")
    n = max(int(n0), 3)
    for _ in range(max_doublings + 1):
        poly = sample(curve, n)
        if mesh(poly) <= eps_target:
            return poly
        n *= 2
    raise ConstructionError(
        f"mesh target {eps_target} not reached after {max_doublings} doublings"
        f" (n={n // 2}, mesh={mesh(sample(curve, n // 2)):.3g})"
    )


def _check_sampled_from(curve: ClosedCurve, poly: ParamPolygon) -> None:
    pts = curve.points(poly.params)
    scale = 1.0 + np.abs(poly.vertices).max()
    if np.abs(pts - poly.vertices).max() > 1e-9 * scale:
        raise ValueError("polygon vertices do not lie on the curve at their parameters")


def band_radius(curve: ClosedCurve, poly: ParamPolygon, m: int = 16) -> float:
    """Radius of a polygon-centered band guaranteed to contain the curve.

    For each parameter interval (the closing interval [t_n, t_1 + 1]
    included) the deviation max |K(t) - K(t_i)| is estimated on m equispaced
    parameters covering the interval; the radius is twice the largest
    deviation.  Up to the sub-sampling error, every curve point then lies
    within the returned radius of the polygon.
    """
    if m < 2:
        raise ValueError(f"need at least 2 sub-samples per interval, got {m}")
    _check_sampled_from(curve, poly)
    gaps = poly.param_gaps()
    fracs = np.linspace(0.0, 1.0, m)
    ts = poly.params[:, None] + gaps[:, None] * fracs[None, :]
    pts = curve.points(ts.ravel()).reshape(poly.n, m, 2)
    dev = np.linalg.norm(pts - poly.vertices[:, None, :], axis=2)
    return 2.0 * float(dev.max())


def injectivity_gap(curve: ClosedCurve, s: float, m: int = 256) -> float:
    """Estimated min distance between curve points at circular parameter
    distance >= s, by brute force over an m x m parameter grid.

    A value of zero (within tolerance) means the sampling cannot certify
    injectivity of the curve.
    """
    if not (0.0 < s <= 0.5):
        raise ValueError(f"s must lie in (0, 1/2], got {s}")
    if m < 8:
        raise ValueError(f"need a grid of at least 8 parameters, got {m}")
    ts = np.arange(m, dtype=float) / m
    pts = curve.points(ts)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    k = np.abs(np.arange(m)[:, None] - np.arange(m)[None, :])
    circ = np.minimum(k, m - k) / m
    sel = dist[circ >= s]
    if sel.size == 0:
        raise ValueError(f"no grid pair reaches parameter distance {s}; increase m")
    return float(sel.min())


def require_resolution(eps: float, gap: float) -> None:
    """Refuse downstream constructions whose band cannot resolve the curve."""
    if not eps < gap / 2.0:
        raise ResolutionError(
            f"band radius eps={eps:.6g} does not resolve the curve"
            f" (injectivity gap {gap:.6g}; need eps < gap/2)"
        )


def auto_band_radius(
    curve: ClosedCurve,
    poly: ParamPolygon,
    m: int = 16,
    s: float = 0.05,
    gap_grid: int = 256,
) -> tuple[float, float]:
    """Band radius plus injectivity gap, validated so eps < gap/2."""
    eps = band_radius(curve, poly, m)
    gap = injectivity_gap(curve, s, gap_grid)
    require_resolution(eps, gap)
    return eps, gap
