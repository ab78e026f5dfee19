"""Point location and metric queries on closed polygons.

Point location uses the even-odd crossing number with a query ray whose
direction is stepped through a fixed irrational-multiple angle sequence
until it passes no vertex and is parallel to no side; results are therefore
deterministic.  Distances are exact minima over sides.  Everything accepts
either a ParamPolygon or a certified SimplePolygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConstructionError
from .primitives import Point, Tolerance
from .simplifier import SimplePolygon, find_illegal_intersection

# golden-angle stepping keeps successive ray directions from repeating
_RAY_BASE = 0.5721923
_RAY_STEP = math.pi * (3.0 - math.sqrt(5.0))

_BLOCK = 256


class PointLocation(Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    ON_BOUNDARY = "OnBoundary"


def _vertices_of(poly) -> np.ndarray:
    return poly.vertices


def is_simple(poly, tau: Tolerance = Tolerance()) -> bool:
    """True iff the polygon has no illegal self-intersection under tau."""
    p = poly.poly if isinstance(poly, SimplePolygon) else poly
    return find_illegal_intersection(p, tau) is None


def distance_to_many(poly, pts: np.ndarray) -> np.ndarray:
    """Distance from each query point to the closed polygon boundary."""
    v = _vertices_of(poly)
    a = v
    d = np.roll(v, -1, axis=0) - v
    dd = np.sum(d * d, axis=1)
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    out = np.empty(len(pts))
    for lo in range(0, len(pts), _BLOCK):
        p = pts[lo : lo + _BLOCK]
        w = p[:, None, :] - a[None, :, :]
        t = np.clip((w[..., 0] * d[:, 0] + w[..., 1] * d[:, 1]) / dd, 0.0, 1.0)
        off_x = w[..., 0] - t * d[:, 0]
        off_y = w[..., 1] - t * d[:, 1]
        out[lo : lo + _BLOCK] = np.sqrt(off_x * off_x + off_y * off_y).min(axis=1)
    return out


def distance_to(poly, p) -> float:
    """Min over sides of the point-to-segment distance."""
    p = (p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1]))
    return float(distance_to_many(poly, np.asarray([p]))[0])


def _crossing_parity_block(v, pts, tau):
    """Even-odd crossing parity for a block of points, with ray retries.

    Returns a boolean array: True = odd parity (inside).
    """
    n = len(v)
    e = np.roll(v, -1, axis=0) - v
    elen = np.hypot(e[:, 0], e[:, 1])
    parity = np.zeros(len(pts), dtype=bool)
    todo = np.arange(len(pts))
    for attempt in range(64):
        ang = _RAY_BASE + attempt * _RAY_STEP
        dx, dy = math.cos(ang), math.sin(ang)
        p = pts[todo]
        w_x = v[None, :, 0] - p[:, None, 0]
        w_y = v[None, :, 1] - p[:, None, 1]
        cross_v = dx * w_y - dy * w_x
        dot_v = dx * w_x + dy * w_y
        wlen = np.sqrt(w_x * w_x + w_y * w_y)
        vert_bad = ((np.abs(cross_v) <= tau * wlen) & (dot_v > 0)).any(axis=1)
        par_bad = (np.abs(dx * e[:, 1] - dy * e[:, 0]) <= tau * elen).any()
        bad = vert_bad | par_bad
        good = ~bad
        if good.any():
            c1 = cross_v[good]
            c2 = np.roll(c1, -1, axis=1)
            straddle = (c1 > 0) != (c2 > 0)
            numer = w_x[good] * e[None, :, 1] - w_y[good] * e[None, :, 0]
            denom = dx * e[None, :, 1] - dy * e[None, :, 0]
            forward = numer * denom > 0
            count = np.sum(straddle & forward, axis=1)
            parity[todo[good]] = (count % 2).astype(bool)
        todo = todo[bad]
        if todo.size == 0:
            return parity
    raise ConstructionError("ray casting failed to find a clean direction")  # pragma: no cover


def contains_many(poly, pts: np.ndarray, tau: Tolerance = Tolerance()) -> np.ndarray:
    """Vectorized point location; returns an array of PointLocation values."""
    v = _vertices_of(poly)
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    dist = distance_to_many(poly, pts)
    on_boundary = dist <= tau.tau
    out = np.empty(len(pts), dtype=object)
    out[on_boundary] = PointLocation.ON_BOUNDARY
    off = np.flatnonzero(~on_boundary)
    for lo in range(0, len(off), _BLOCK):
        idx = off[lo : lo + _BLOCK]
        inside = _crossing_parity_block(v, pts[idx], tau.tau)
        out[idx] = np.where(inside, PointLocation.INSIDE, PointLocation.OUTSIDE)
    return out


def contains(poly, p, tau: Tolerance = Tolerance()) -> PointLocation:
    """Even-odd point location for a single point."""
    p = (p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1]))
    return contains_many(poly, np.asarray([p]), tau)[0]


def diameter_pair(poly_or_vertices) -> tuple[int, int]:
    """Indices (a, b), a < b, of a vertex pair at maximal distance.

    Exact quadratic scan; ties resolved to the lexicographically smallest
    index pair.
    """
    v = np.asarray(getattr(poly_or_vertices, "vertices", poly_or_vertices), dtype=float)
    n = len(v)
    if n < 2:
        raise ValueError("need at least two vertices")
    best = (-1.0, 0, 1)
    for lo in range(0, n, _BLOCK):
        rows = v[lo : lo + _BLOCK]
        dx = rows[:, None, 0] - v[None, :, 0]
        dy = rows[:, None, 1] - v[None, :, 1]
        d2 = dx * dx + dy * dy
        jj = np.arange(n)[None, :]
        ii = (lo + np.arange(len(rows)))[:, None]
        d2[jj <= ii] = -np.inf
        m = float(d2.max())
        if m > best[0]:
            flat = int(np.argmax(d2 == m))  # first row, then first column
            best = (m, lo + flat // n, flat % n)
    return best[1], best[2]


@dataclass(frozen=True)
class ChainPair:
    """The two open polylines into which two vertices split a polygon.

    Both chains include the split vertices.  ``left`` is the chain first
    encountered travelling rightward along the midline of the split segment,
    in the frame where the split segment points up the +y axis.
    """

    left: np.ndarray
    right: np.ndarray
    left_indices: np.ndarray
    right_indices: np.ndarray


def rotation_to_y(a_pt: np.ndarray, b_pt: np.ndarray) -> np.ndarray:
    """Rotation matrix sending the direction a->b to the +y axis."""
    u = b_pt - a_pt
    u = u / math.hypot(u[0], u[1])
    return np.array([[u[1], -u[0]], [u[0], u[1]]])


def horizontal_crossings(rot_vertices: np.ndarray, y_line: float, tau: float, scale: float):
    """Crossings of a horizontal line with the closed polygon, nudged clear
    of vertices.  Returns (x coordinates, side indices, line height used)."""
    vy = rot_vertices[:, 1]
    step = max(4.0 * tau, 1e-12 * scale) * math.sqrt(2.0)
    for attempt in range(64):
        y = y_line + attempt * step
        dy = vy - y
        if np.abs(dy).min() <= tau:
            continue
        dy_next = np.roll(dy, -1)
        straddle = (dy > 0) != (dy_next > 0)
        sides = np.flatnonzero(straddle)
        frac = dy[sides] / (dy[sides] - dy_next[sides])
        vx = rot_vertices[:, 0]
        vx_next = np.roll(vx, -1)
        xs = vx[sides] + frac * (vx_next[sides] - vx[sides])
        return xs, sides, y
    raise ConstructionError("could not clear the midline of vertex degeneracies")


def _cyclic_range(a: int, b: int, n: int) -> np.ndarray:
    return (a + np.arange((b - a) % n + 1)) % n


def split_chains(poly: SimplePolygon, a: int, b: int, tau: Tolerance = Tolerance()) -> ChainPair:
    """Split the vertex cycle at indices a and b into the two chains."""
    if a == b:
        raise ValueError("split vertices must differ")
    v = _vertices_of(poly)
    n = len(v)
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"indices ({a}, {b}) out of range for n={n}")
    chain1 = _cyclic_range(a, b, n)
    chain2 = _cyclic_range(b, a, n)
    rot = rotation_to_y(v[a], v[b])
    vr = (v - v[a]) @ rot.T
    h = float(vr[b, 1])
    scale = 1.0 + float(np.abs(vr).max())
    xs, sides, _ = horizontal_crossings(vr, 0.5 * h, tau.tau, scale)
    if xs.size == 0:
        raise ConstructionError("midline does not cross the polygon")
    first_side = int(sides[np.argmin(xs)])
    in_chain1 = (first_side - a) % n < (b - a) % n
    li, ri = (chain1, chain2) if in_chain1 else (chain2, chain1)
    return ChainPair(left=v[li], right=v[ri], left_indices=li, right_indices=ri)


def polyline_distance(chain: np.ndarray, p) -> float:
    """Distance from a point to an open polyline given by its vertices."""
    p = np.asarray((p.x, p.y) if isinstance(p, Point) else p, dtype=float)
    a = chain[:-1]
    d = chain[1:] - a
    dd = np.sum(d * d, axis=1)
    w = p[None, :] - a
    t = np.clip((w[:, 0] * d[:, 0] + w[:, 1] * d[:, 1]) / dd, 0.0, 1.0)
    off = w - t[:, None] * d
    return float(np.hypot(off[:, 0], off[:, 1]).min())
