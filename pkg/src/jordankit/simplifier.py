"""Reduction of a self-intersecting closed polygon to a simple one.

Two kinds of illegal self-intersection are handled.  Adjacent sides may
overlap beyond their common vertex (one outer endpoint is an inner point of
the other side); the shared vertex is then eliminated.  Non-adjacent sides
may cross; the crossing is removed by replacing one of the two sub-polygons
determined by the crossing with a single chord.  The chord always connects
the endpoint pair with the smaller distance, and of the two sub-polygons the
parametrically longer one (parameter span rule: the complement is kept when
the loop's span is at most half a period) survives.  Each step removes at
least one vertex, never increases the mesh, and preserves the sampling
conditions, so the procedure terminates in at most n - 3 steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curves import ParamPolygon, mesh
from .errors import ConstructionError, DegenerateCurveError
from .primitives import (
    OverlapIntersection,
    Point,
    PointIntersection,
    Segment,
    Tolerance,
    is_inner_point,
    segment_intersection,
)


class IntersectionKind(Enum):
    ADJACENT_DEGENERATE = 0
    NON_ADJACENT_CROSS = 1


class Winding(Enum):
    CCW = 1
    CW = -1


@dataclass(frozen=True, slots=True)
class IllegalIntersection:
    """Sides i and j (0-based, j = i+1 mod n for the adjacent kind) share
    geometry beyond what a closed polygon allows."""

    kind: IntersectionKind
    i: int
    j: int
    witness: Point


class SimplePolygon:
    """A ParamPolygon certified free of illegal self-intersections."""

    def __init__(self, poly: ParamPolygon, orientation: Winding):
        self.poly = poly
        self.orientation = orientation

    def __getattr__(self, name):
        return getattr(self.poly, name)

    def __repr__(self):
        return f"SimplePolygon(n={self.poly.n}, {self.orientation.name})"


def signed_area(poly: ParamPolygon) -> float:
    a, b = poly.side_arrays()
    return 0.5 * float(np.sum(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]))


def _seg_point_dists(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise distance from points p to segments (a, b); all (n, 2)."""
    d = b - a
    w = p - a
    t = np.clip(np.sum(w * d, axis=1) / np.sum(d * d, axis=1), 0.0, 1.0)
    off = w - t[:, None] * d
    return np.hypot(off[:, 0], off[:, 1])


def _adjacent_degenerate_mask(poly: ParamPolygon, tau: Tolerance) -> np.ndarray:
    """For each k: do sides k and k+1 overlap beyond the shared vertex?"""
    v = poly.vertices
    p0 = v
    p1 = np.roll(v, -1, axis=0)
    p2 = np.roll(v, -2, axis=0)
    t = tau.tau
    d01 = np.hypot(*(p1 - p0).T)
    d02 = np.hypot(*(p2 - p0).T)
    d12 = np.hypot(*(p2 - p1).T)
    first_inner = (_seg_point_dists(p0, p1, p2) <= t) & (d01 > t) & (d02 > t)
    second_inner = (_seg_point_dists(p2, p0, p1) <= t) & (d12 > t) & (d02 > t)
    return first_inner | second_inner


def _side_segment(poly: ParamPolygon, k: int) -> Segment:
    v = poly.vertices
    a = v[k]
    b = v[(k + 1) % poly.n]
    return Segment(Point(float(a[0]), float(a[1])), Point(float(b[0]), float(b[1])))


def _classify_pair(poly, i, j, tau) -> IllegalIntersection | None:
    res = segment_intersection(_side_segment(poly, i), _side_segment(poly, j), tau)
    if isinstance(res, PointIntersection):
        return IllegalIntersection(IntersectionKind.NON_ADJACENT_CROSS, i, j, res.point)
    if isinstance(res, OverlapIntersection):
        s = res.segment
        mid = Point(0.5 * (s.a.x + s.b.x), 0.5 * (s.a.y + s.b.y))
        return IllegalIntersection(IntersectionKind.NON_ADJACENT_CROSS, i, j, mid)
    return None


def _first_adjacent(poly: ParamPolygon, tau: Tolerance) -> IllegalIntersection | None:
    bad = np.flatnonzero(_adjacent_degenerate_mask(poly, tau))
    if bad.size == 0:
        return None
    k = int(bad[0])
    n = poly.n
    j = (k + 1) % n
    # Witness: whichever outer endpoint sits inside the opposite side.
    v = poly.vertices
    seg = Segment(
        Point(float(v[j][0]), float(v[j][1])),
        Point(float(v[(k + 2) % n][0]), float(v[(k + 2) % n][1])),
    )
    p0 = Point(float(v[k][0]), float(v[k][1]))
    witness = p0 if is_inner_point(p0, seg, tau) else Point(
        float(v[(k + 2) % n][0]), float(v[(k + 2) % n][1])
    )
    return IllegalIntersection(IntersectionKind.ADJACENT_DEGENERATE, k, j, witness)


def _bbox_arrays(poly: ParamPolygon):
    a, b = poly.side_arrays()
    return (
        np.minimum(a[:, 0], b[:, 0]),
        np.maximum(a[:, 0], b[:, 0]),
        np.minimum(a[:, 1], b[:, 1]),
        np.maximum(a[:, 1], b[:, 1]),
    )


def find_illegal_intersection(
    poly: ParamPolygon, tau: Tolerance = Tolerance()
) -> IllegalIntersection | None:
    """First illegal intersection in the fixed order: adjacent-degenerate by
    side index first, then non-adjacent crossings by (i, j)."""
    hit = _first_adjacent(poly, tau)
    if hit is not None:
        return hit
    n = poly.n
    minx, maxx, miny, maxy = _bbox_arrays(poly)
    t = tau.tau
    for i in range(n - 2):
        lo = i + 2
        hi = n - 1 if i == 0 else n  # (0, n-1) is the closing adjacency
        if lo >= hi:
            continue
        js = np.arange(lo, hi)
        near = (
            (minx[js] <= maxx[i] + t)
            & (maxx[js] >= minx[i] - t)
            & (miny[js] <= maxy[i] + t)
            & (maxy[js] >= miny[i] - t)
        )
        for j in js[near]:
            hit = _classify_pair(poly, i, int(j), tau)
            if hit is not None:
                return hit
    return None


def sweep_illegal_intersections(
    poly: ParamPolygon, tau: Tolerance = Tolerance()
) -> list[IllegalIntersection]:
    """All non-adjacent illegal intersections via an x-interval sweep.

    Candidates are discovered by sweeping side bounding boxes in x and
    pruning by y-overlap; every candidate is confirmed with the exact
    segment predicate, then the hits are sorted into the fixed (i, j)
    order.  Same verdicts as the quadratic scan, collected all at once.
    """
    n = poly.n
    minx, maxx, miny, maxy = _bbox_arrays(poly)
    t = tau.tau
    order = np.argsort(minx, kind="stable")
    active: list[int] = []
    hits: list[IllegalIntersection] = []
    for idx in order:
        x0 = minx[idx]
        active = [k for k in active if maxx[k] >= x0 - t]
        for k in active:
            i, j = (k, int(idx)) if k < idx else (int(idx), k)
            if j - i < 2 or (i == 0 and j == n - 1):
                continue
            if miny[i] > maxy[j] + t or miny[j] > maxy[i] + t:
                continue
            hit = _classify_pair(poly, i, j, tau)
            if hit is not None:
                hits.append(hit)
        active.append(int(idx))
    hits.sort(key=lambda h: (h.i, h.j))
    return hits


def _find_first(poly, tau, accelerate):
    if not accelerate:
        return find_illegal_intersection(poly, tau)
    hit = _first_adjacent(poly, tau)
    if hit is not None:
        return hit
    hits = sweep_illegal_intersections(poly, tau)
    return hits[0] if hits else None


def _subpolygon(poly: ParamPolygon, kept: np.ndarray) -> ParamPolygon:
    if len(kept) < 3:
        raise DegenerateCurveError(
            f"reduction would leave {len(kept)} vertices; sampling too coarse, refine first"
        )
    try:
        return ParamPolygon(poly.vertices[kept], poly.params[kept])
    except ValueError as exc:
        raise DegenerateCurveError(f"reduction broke the sampling conditions: {exc}") from exc


def fix_adjacent(poly: ParamPolygon, k: int, tau: Tolerance = Tolerance()) -> ParamPolygon:
    """Eliminate the vertex shared by the degenerate adjacent sides k, k+1."""
    n = poly.n
    if not 0 <= k < n:
        raise ValueError(f"side index {k} out of range for n={n}")
    if not _adjacent_degenerate_mask(poly, tau)[k]:
        raise ValueError(f"adjacent sides {k} and {(k + 1) % n} do not overlap degenerately")
    kept = np.delete(np.arange(n), (k + 1) % n)
    return _subpolygon(poly, kept)


def cut_loop(poly: ParamPolygon, x: IllegalIntersection) -> ParamPolygon:
    """Remove the crossing of non-adjacent sides i and j with a single chord.

    The chord joins the closer of the endpoint pairs (P_i, P_j) and
    (P_{i+1}, P_{j+1}); ties go to the first.  Of the two sub-polygons the
    chord creates, the parametrically longer one is kept: the loop between
    the chord's vertices survives only when its parameter span exceeds half
    a period.
    """
    if x.kind is not IntersectionKind.NON_ADJACENT_CROSS:
        raise ValueError("cut_loop requires a non-adjacent crossing")
    n = poly.n
    i, j = x.i, x.j
    if not (0 <= i < j < n) or j - i < 2 or (i == 0 and j == n - 1):
        raise ValueError(f"sides ({i}, {j}) are not a non-adjacent pair for n={n}")
    v = poly.vertices
    d_ij = math.hypot(*(v[i] - v[j]))
    d_next = math.hypot(*(v[(i + 1) % n] - v[(j + 1) % n]))
    if d_ij <= d_next:
        a, b = i, j
    else:
        a, b = i + 1, (j + 1) % n
    t = poly.params
    span = t[b] - t[a] if b > a else t[b] + 1.0 - t[a]
    if span <= 0.5:
        # keep the complement of the loop from a to b
        if b > a:
            kept = np.concatenate([np.arange(0, a + 1), np.arange(b, n)])
        else:
            kept = np.arange(b, a + 1)
    else:
        # keep the loop itself (b < a only when the chord wraps to vertex 0)
        if b > a:
            kept = np.arange(a, b + 1)
        else:
            kept = np.concatenate([np.arange(0, b + 1), np.arange(a, n)])
    return _subpolygon(poly, kept)


def certify_simple(
    poly: ParamPolygon, tau: Tolerance = Tolerance(), accelerate: bool = False
) -> SimplePolygon:
    hit = _find_first(poly, tau, accelerate)
    if hit is not None:
        raise ConstructionError(f"polygon is not simple: {hit}")
    area = signed_area(poly)
    scale = 1.0 + float(np.abs(poly.vertices).max())
    if abs(area) <= tau.tau * scale * scale:
        raise ConstructionError("polygon encloses no area")
    return SimplePolygon(poly, Winding.CCW if area > 0 else Winding.CW)


def simplify(
    poly: ParamPolygon,
    tau: Tolerance = Tolerance(),
    accelerate: bool = False,
) -> SimplePolygon:
    """Iterate the reduction until no illegal intersection remains.

    Guarantees, checked per step: the surviving (vertex, parameter) pairs
    are a subset of the input's in unchanged order, the mesh never grows,
    and the sampling conditions still hold.  Raises DegenerateCurveError if
    the reduction would drop below 3 vertices.
    """
    current = poly
    prev_mesh = mesh(poly)
    scale = 1.0 + float(np.abs(poly.vertices).max())
    slack = 1e-12 * scale
    for _ in range(poly.n):  # strictly decreasing vertex count bounds the loop
        hit = _find_first(current, tau, accelerate)
        if hit is None:
            out = certify_simple(current, tau, accelerate)
            _check_subset(poly, out.poly)
            return out
        if hit.kind is IntersectionKind.ADJACENT_DEGENERATE:
            current = fix_adjacent(current, hit.i, tau)
        else:
            current = cut_loop(current, hit)
        step_mesh = mesh(current)
        if step_mesh > prev_mesh + slack:
            raise ConstructionError(
                f"mesh grew during reduction: {prev_mesh} -> {step_mesh} at {hit}"
            )
        prev_mesh = step_mesh
    raise ConstructionError("reduction failed to terminate")  # pragma: no cover


def _check_subset(original: ParamPolygon, reduced: ParamPolygon) -> None:
    pos = np.searchsorted(original.params, reduced.params)
    ok = (
        pos.max(initial=0) < original.n
        and np.array_equal(original.params[pos], reduced.params)
        and np.array_equal(original.vertices[pos], reduced.vertices)
        and np.all(np.diff(pos) > 0)
    )
    if not ok:
        raise ConstructionError("reduced polygon is not an ordered subset of the input")
