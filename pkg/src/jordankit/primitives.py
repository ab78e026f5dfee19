"""Low-level 2D predicates and constructions.

Everything here is a pure function of its inputs.  Incidence decisions are
made with an explicit slack ``tau``: in distance predicates ``tau`` is an
absolute length, in the orientation predicate it is relative and scaled by
the squared coordinate magnitude so the comparison stays an area-vs-area
one.  Exact or adaptive-precision arithmetic is deliberately out of scope;
every consumer of these predicates is itself parameterized by a much larger
band radius, so float64 plus ``tau`` is enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class Orientation(Enum):
    LEFT = 1
    RIGHT = -1
    COLLINEAR = 0


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a.x == self.b.x and self.a.y == self.b.y:
            raise ValueError(f"zero-length segment at ({self.a.x}, {self.a.y})")

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


@dataclass(frozen=True, slots=True)
class Tolerance:
    """Predicate slack.  Must stay orders of magnitude below the band radius
    used downstream; ``check_band`` enforces tau <= eps/100 at configuration
    points that know both values."""

    tau: float = 1e-9

    def __post_init__(self):
        if not (math.isfinite(self.tau) and self.tau >= 0.0):
            raise ValueError(f"tolerance must be a finite nonnegative real, got {self.tau}")

    def check_band(self, eps: float) -> None:
        if self.tau > eps / 100.0:
            raise ValueError(
                f"tolerance tau={self.tau} too coarse for band radius eps={eps}"
                " (need tau <= eps/100)"
            )


# Intersection results -------------------------------------------------------

@dataclass(frozen=True, slots=True)
class NoIntersection:
    pass


@dataclass(frozen=True, slots=True)
class PointIntersection:
    point: Point


@dataclass(frozen=True, slots=True)
class OverlapIntersection:
    segment: Segment


SegmentIntersection = NoIntersection | PointIntersection | OverlapIntersection

EMPTY = NoIntersection()


def orient(p: Point, q: Point, r: Point, tau: Tolerance = Tolerance()) -> Orientation:
    """Sign of the signed area of triangle pqr.

    Collinear iff |signed area| <= tau * scale, where scale is the largest
    coordinate magnitude among the three points, squared.
    """
    cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    area = 0.5 * cross
    m = max(abs(p.x), abs(p.y), abs(q.x), abs(q.y), abs(r.x), abs(r.y))
    if abs(area) <= tau.tau * m * m:
        return Orientation.COLLINEAR
    return Orientation.LEFT if area > 0.0 else Orientation.RIGHT


def point_segment_distance(p: Point, s: Segment) -> float:
    """Euclidean distance from p to the closed segment s."""
    dx = s.b.x - s.a.x
    dy = s.b.y - s.a.y
    wx = p.x - s.a.x
    wy = p.y - s.a.y
    dd = dx * dx + dy * dy
    if dd == 0.0:  # subnormal-length segment: squared length underflows
        return math.hypot(wx, wy)
    t = min(1.0, max(0.0, (wx * dx + wy * dy) / dd))
    return math.hypot(wx - t * dx, wy - t * dy)


def is_inner_point(p: Point, s: Segment, tau: Tolerance = Tolerance()) -> bool:
    """True iff p lies on s strictly between the endpoints (> tau from each)."""
    if point_segment_distance(p, s) > tau.tau:
        return False
    da = math.hypot(p.x - s.a.x, p.y - s.a.y)
    db = math.hypot(p.x - s.b.x, p.y - s.b.y)
    return da > tau.tau and db > tau.tau


def _point_along(s: Segment, arclen: float, length: float) -> Point:
    f = arclen / length
    return Point(s.a.x + f * (s.b.x - s.a.x), s.a.y + f * (s.b.y - s.a.y))


def _collinear_overlap(s: Segment, u: Segment, tau: Tolerance) -> SegmentIntersection:
    # 1-D interval analysis along s; overlap endpoints are reconstructed on s
    # so the result is deterministic even when u sits tau off the line.
    length = s.length
    dx = (s.b.x - s.a.x) / length
    dy = (s.b.y - s.a.y) / length
    pa = (u.a.x - s.a.x) * dx + (u.a.y - s.a.y) * dy
    pb = (u.b.x - s.a.x) * dx + (u.b.y - s.a.y) * dy
    lo, hi = min(pa, pb), max(pa, pb)
    lo = max(lo, 0.0)
    hi = min(hi, length)
    if hi - lo > tau.tau:
        return OverlapIntersection(
            Segment(_point_along(s, lo, length), _point_along(s, hi, length))
        )
    if hi - lo >= -tau.tau:
        return PointIntersection(_point_along(s, 0.5 * (lo + hi), length))
    return EMPTY


def segment_intersection(
    s: Segment, u: Segment, tau: Tolerance = Tolerance()
) -> SegmentIntersection:
    """Intersection of two closed segments under slack tau.

    Returns NoIntersection, a single PointIntersection, or an
    OverlapIntersection carrying the shared collinear sub-segment of
    positive length.
    """
    oa = orient(s.a, s.b, u.a, tau)
    ob = orient(s.a, s.b, u.b, tau)
    oc = orient(u.a, u.b, s.a, tau)
    od = orient(u.a, u.b, s.b, tau)
    C = Orientation.COLLINEAR

    if (oa is C and ob is C) or (oc is C and od is C):
        return _collinear_overlap(s, u, tau)

    if oa is C or ob is C or oc is C or od is C:
        # Non-parallel lines with an endpoint on the other line: the only
        # possible common point is that endpoint.
        for cand, other in ((u.a, s), (u.b, s), (s.a, u), (s.b, u)):
            if point_segment_distance(cand, other) <= tau.tau:
                return PointIntersection(cand)
        return EMPTY

    if oa is not ob and oc is not od:
        dsx = s.b.x - s.a.x
        dsy = s.b.y - s.a.y
        dux = u.b.x - u.a.x
        duy = u.b.y - u.a.y
        denom = dsx * duy - dsy * dux
        t = ((u.a.x - s.a.x) * duy - (u.a.y - s.a.y) * dux) / denom
        return PointIntersection(Point(s.a.x + t * dsx, s.a.y + t * dsy))

    return EMPTY
