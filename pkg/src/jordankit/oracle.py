"""Brute-force reference implementations used by tests and the fuzz harness.

These favor obviousness over speed and never share decision logic with the
production code: point location is done by winding angles instead of ray
crossings, reachability by breadth-first search on a grid, and the
self-intersection list by an exhaustive all-pairs distance test.  Numpy
broadcasting is used for the all-pairs matrix, but no pruning, no early
exit, no sweeping.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .curves import ParamPolygon
from .primitives import Point, Tolerance
from .simplifier import IllegalIntersection, IntersectionKind, SimplePolygon
from .topology import distance_to, distance_to_many


def winding_number(poly, p, tau: Tolerance = Tolerance()) -> int:
    """Sum of signed angle turns of the boundary around p, in full turns."""
    pt = np.asarray((p.x, p.y) if isinstance(p, Point) else p, dtype=float)
    if distance_to(poly, pt) <= tau.tau:
        raise ValueError("winding number undefined on the boundary")
    v = poly.vertices - pt
    ang = np.arctan2(v[:, 1], v[:, 0])
    turns = np.diff(np.concatenate([ang, ang[:1]]))
    turns = (turns + math.pi) % (2.0 * math.pi) - math.pi
    return int(round(float(turns.sum()) / (2.0 * math.pi)))


@dataclass(frozen=True)
class GridSpec:
    """Uniform cell grid covering the polygon with margin at least 2h."""

    h: float
    lo: tuple[float, float]
    hi: tuple[float, float]

    def __post_init__(self):
        if not self.h > 0.0:
            raise ValueError("cell size must be positive")

    def validate_for(self, poly) -> None:
        v = poly.vertices
        m = 2.0 * self.h
        if (
            v[:, 0].min() - self.lo[0] < m
            or v[:, 1].min() - self.lo[1] < m
            or self.hi[0] - v[:, 0].max() < m
            or self.hi[1] - v[:, 1].max() < m
        ):
            raise ValueError("grid box must contain the polygon with margin >= 2h")


def grid_for(poly, eps: float) -> GridSpec:
    """Convenience grid: h = eps/4, box = polygon bbox with 4h margin."""
    h = eps / 4.0
    v = poly.vertices
    return GridSpec(
        h,
        (float(v[:, 0].min() - 4 * h), float(v[:, 1].min() - 4 * h)),
        (float(v[:, 0].max() + 4 * h), float(v[:, 1].max() + 4 * h)),
    )


def grid_path(poly: SimplePolygon, eps: float, A, B, grid: GridSpec):
    """4-neighbor BFS over grid cells that are inside the polygon and
    farther than eps from it; returns a cell-center polyline or None."""
    from .regions import RegionLabel, classify  # late import: regions builds on topology only

    if grid.h > eps / 4.0 + 1e-15:
        raise ValueError("grid cell size must be at most eps/4")
    grid.validate_for(poly)
    a = np.asarray((A.x, A.y) if isinstance(A, Point) else A, dtype=float)
    b = np.asarray((B.x, B.y) if isinstance(B, Point) else B, dtype=float)
    for name, p in (("A", a), ("B", b)):
        if classify(poly, eps, p) is not RegionLabel.INTERIOR:
            raise ValueError(f"grid_path endpoint {name} is not Interior")

    nx = int(math.ceil((grid.hi[0] - grid.lo[0]) / grid.h))
    ny = int(math.ceil((grid.hi[1] - grid.lo[1]) / grid.h))
    cx = grid.lo[0] + (np.arange(nx) + 0.5) * grid.h
    cy = grid.lo[1] + (np.arange(ny) + 0.5) * grid.h
    centers = np.stack(np.meshgrid(cx, cy, indexing="ij"), axis=-1).reshape(-1, 2)
    dist = distance_to_many(poly, centers)
    from .topology import PointLocation, contains_many

    loc = contains_many(poly, centers)
    inside = np.array([l is PointLocation.INSIDE for l in loc])
    free = (dist > eps) & inside
    free = free.reshape(nx, ny)

    def cell_of(p):
        i = int((p[0] - grid.lo[0]) / grid.h)
        j = int((p[1] - grid.lo[1]) / grid.h)
        return min(max(i, 0), nx - 1), min(max(j, 0), ny - 1)

    start = cell_of(a)
    goal = cell_of(b)
    if not (free[start] and free[goal]):
        return None
    if start == goal:
        center = (cx[start[0]], cy[start[1]])
        return np.asarray([center])

    parent = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            break
        i, j = cur
        for nxt in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
            if 0 <= nxt[0] < nx and 0 <= nxt[1] < ny and free[nxt] and nxt not in parent:
                parent[nxt] = cur
                queue.append(nxt)
    if goal not in parent:
        return None
    cells = []
    cur = goal
    while cur is not None:
        cells.append(cur)
        cur = parent[cur]
    cells.reverse()
    return np.asarray([(cx[i], cy[j]) for i, j in cells])


def _seg_sqdist_grid(ax1, ay1, bx1, by1, ax2, ay2, bx2, by2, inv1, inv2):
    """Squared min distances between segment rows (index 1, column vectors)
    and segment columns (index 2, row vectors), plus the strict-crossing
    mask.  inv1/inv2 are the reciprocal squared lengths."""
    d1x = bx1 - ax1
    d1y = by1 - ay1
    d2x = bx2 - ax2
    d2y = by2 - ay2
    wx = ax2 - ax1
    wy = ay2 - ay1
    c1 = d1x * wy - d1y * wx
    c2 = d1x * (by2 - ay1) - d1y * (bx2 - ax1)
    c3 = d2y * wx - d2x * wy
    c4 = d2x * (by1 - ay2) - d2y * (bx1 - ax2)
    crossing = ((c1 > 0) != (c2 > 0)) & ((c3 > 0) != (c4 > 0))

    def pt_seg2(px, py, ax, ay, dx, dy, inv):
        t = np.clip(((px - ax) * dx + (py - ay) * dy) * inv, 0.0, 1.0)
        ox = px - ax - t * dx
        oy = py - ay - t * dy
        return ox * ox + oy * oy

    dmin = np.minimum.reduce(
        [
            pt_seg2(ax2, ay2, ax1, ay1, d1x, d1y, inv1),
            pt_seg2(bx2, by2, ax1, ay1, d1x, d1y, inv1),
            pt_seg2(ax1, ay1, ax2, ay2, d2x, d2y, inv2),
            pt_seg2(bx1, by1, ax2, ay2, d2x, d2y, inv2),
        ]
    )
    dmin[crossing] = 0.0
    return dmin, crossing


def _pair_witness(a1, b1, a2, b2, crossing, tau) -> Point:
    """Witness point for one illegal pair, mirroring the production
    preference order for touch cases."""
    d1 = (b1[0] - a1[0], b1[1] - a1[1])
    d2 = (b2[0] - a2[0], b2[1] - a2[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    l1 = math.hypot(*d1)
    l2 = math.hypot(*d2)
    if abs(denom) <= 1e-12 * l1 * l2:
        # collinear overlap: midpoint of the shared interval along side 1
        ux, uy = d1[0] / l1, d1[1] / l1
        pa = (a2[0] - a1[0]) * ux + (a2[1] - a1[1]) * uy
        pb = (b2[0] - a1[0]) * ux + (b2[1] - a1[1]) * uy
        lo = max(min(pa, pb), 0.0)
        hi = min(max(pa, pb), l1)
        mid = 0.5 * (lo + hi)
        return Point(float(a1[0] + mid * ux), float(a1[1] + mid * uy))
    if crossing:
        t = ((a2[0] - a1[0]) * d2[1] - (a2[1] - a1[1]) * d2[0]) / denom
        return Point(float(a1[0] + t * d1[0]), float(a1[1] + t * d1[1]))

    def pt_seg_d(p, a, d, ln):
        t = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (ln * ln)
        t = min(1.0, max(0.0, t))
        return math.hypot(p[0] - a[0] - t * d[0], p[1] - a[1] - t * d[1])

    for cand, seg_a, seg_d, seg_l in (
        (a2, a1, d1, l1),
        (b2, a1, d1, l1),
        (a1, a2, d2, l2),
        (b1, a2, d2, l2),
    ):
        if pt_seg_d(cand, seg_a, seg_d, seg_l) <= tau:
            return Point(float(cand[0]), float(cand[1]))
    return Point(float(a2[0]), float(a2[1]))  # pragma: no cover


def naive_self_intersections(
    poly: ParamPolygon, tau: Tolerance = Tolerance()
) -> list[IllegalIntersection]:
    """Exhaustive list of illegal self-intersections, lexicographically
    sorted with adjacent-degenerate entries first."""
    if isinstance(poly, SimplePolygon):
        poly = poly.poly
    v = poly.vertices
    n = poly.n
    t = tau.tau
    out: list[IllegalIntersection] = []

    # adjacent pairs: outer endpoint inside the other side
    def on_seg(p, a, b):
        dx, dy = b[0] - a[0], b[1] - a[1]
        ll = dx * dx + dy * dy
        tt = min(1.0, max(0.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / ll))
        return math.hypot(p[0] - a[0] - tt * dx, p[1] - a[1] - tt * dy) <= t

    for k in range(n):
        p0 = v[k]
        p1 = v[(k + 1) % n]
        p2 = v[(k + 2) % n]
        d01 = math.hypot(p1[0] - p0[0], p1[1] - p0[1])
        d02 = math.hypot(p2[0] - p0[0], p2[1] - p0[1])
        d12 = math.hypot(p2[0] - p1[0], p2[1] - p1[1])
        first = on_seg(p0, p1, p2) and d01 > t and d02 > t
        second = on_seg(p2, p0, p1) and d12 > t and d02 > t
        if first or second:
            w = p0 if first else p2
            out.append(
                IllegalIntersection(
                    IntersectionKind.ADJACENT_DEGENERATE,
                    k,
                    (k + 1) % n,
                    Point(float(w[0]), float(w[1])),
                )
            )

    # non-adjacent pairs: all of them, by blocks of rows
    starts = v
    ends = np.roll(v, -1, axis=0)
    sx, sy = np.ascontiguousarray(starts[:, 0]), np.ascontiguousarray(starts[:, 1])
    ex, ey = np.ascontiguousarray(ends[:, 0]), np.ascontiguousarray(ends[:, 1])
    dx, dy = ex - sx, ey - sy
    inv = 1.0 / (dx * dx + dy * dy)
    block = max(1, (1 << 16) // max(n, 1))
    cross_pairs: list[tuple[int, int, bool]] = []
    t2 = t * t
    cols = np.arange(n)[None, :]
    for lo in range(0, n - 2, block):
        hi = min(lo + block, n - 2)
        rows = np.arange(lo, hi)[:, None]
        sq, crossing = _seg_sqdist_grid(
            sx[lo:hi, None], sy[lo:hi, None], ex[lo:hi, None], ey[lo:hi, None],
            sx[None, :], sy[None, :], ex[None, :], ey[None, :],
            inv[lo:hi, None], inv[None, :],
        )
        valid = (cols >= rows + 2) & ~((rows == 0) & (cols == n - 1))
        bad = (sq <= t2) & valid
        for bi, bj in zip(*np.nonzero(bad)):
            cross_pairs.append((int(bi) + lo, int(bj), bool(crossing[bi, bj])))

    for i, j, c in sorted(cross_pairs):
        witness = _pair_witness(starts[i], ends[i], starts[j], ends[j], c, t)
        out_kind = IntersectionKind.NON_ADJACENT_CROSS
        out.append(IllegalIntersection(out_kind, i, j, witness))

    out.sort(key=lambda h: (h.kind.value, h.i, h.j))
    return out
