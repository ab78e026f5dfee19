"""Interior subdivision of a simple polygon and path construction inside it.

Every polygon side gets a covering rectangle (side length plus four band
radii by four band radii, the side centered); the rectangle parts inside the
polygon, together with shortest connector segments from the special points
(rectangle corners and inner crossings of sides of different rectangles,
when interior) down to the polygon, subdivide the interior into faces.  The
face containing a reference interior point is the separating polygon: a
simple polygon that keeps the whole boundary band, and with it the curve the
polygon approximates, outside.  Interior paths between two points of the
same face are routed through the face's triangulation and then straightened
while a clearance margin holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .arrangement import Arrangement
from .curves import ParamPolygon, polygon_from_points
from .errors import ConstructionError, NotSameFaceError
from .primitives import Point, Segment, Tolerance
from .regions import RegionLabel, classify
from .simplifier import SimplePolygon, certify_simple
from .topology import PointLocation, contains_many


@dataclass(frozen=True)
class SideRectangle:
    """Covering rectangle of one polygon side: size (|PQ| + 4*eps) x (4*eps),
    the side centered, every rectangle side at distance 2*eps from it."""

    side_index: int
    corners: np.ndarray  # (4, 2), counterclockwise


class SpecialPointOrigin(Enum):
    RECTANGLE_VERTEX = "RectangleVertex"
    INNER_INTERSECTION = "InnerIntersection"


@dataclass(frozen=True)
class SpecialPoint:
    location: Point
    origin: SpecialPointOrigin
    connector: Segment  # shortest segment from the location to the polygon


@dataclass(frozen=True)
class PathPolyline:
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError("path needs at least one point")
        if len(pts) > 1 and (np.abs(np.diff(pts, axis=0)).max(axis=1) == 0.0).any():
            raise ValueError("consecutive path points must be distinct")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class SeparatingPolygon:
    polygon: SimplePolygon
    face_id: int
    diagnostics: dict = field(default_factory=dict)


def side_rectangles(poly: SimplePolygon, eps: float) -> list[SideRectangle]:
    """One covering rectangle per polygon side."""
    if not eps > 0.0:
        raise ValueError(f"band radius must be positive, got {eps}")
    a, b = poly.side_arrays()
    d = b - a
    ln = np.hypot(d[:, 0], d[:, 1])
    u = d / ln[:, None]
    v = np.stack([-u[:, 1], u[:, 0]], axis=1)
    lo = a - 2.0 * eps * u
    hi = b + 2.0 * eps * u
    corners = np.stack(
        [lo - 2.0 * eps * v, hi - 2.0 * eps * v, hi + 2.0 * eps * v, lo + 2.0 * eps * v],
        axis=1,
    )
    return [SideRectangle(k, corners[k]) for k in range(len(corners))]


def _rect_side_array(rects: list[SideRectangle]):
    """All rectangle sides as an (4r, 4) segment array plus owner indices."""
    corners = np.stack([r.corners for r in rects])  # (r, 4, 2)
    nxt = np.roll(corners, -1, axis=1)
    segs = np.concatenate([corners, nxt], axis=2).reshape(-1, 4)
    owner = np.repeat(np.arange(len(rects)), 4)
    return segs, owner


def _nearest_boundary_foot(poly, pts: np.ndarray):
    """Per point: (distance, side index, foot point) on the polygon, ties on
    distance resolved to the smallest side index."""
    a, b = poly.side_arrays()
    d = b - a
    dd = np.sum(d * d, axis=1)
    dist = np.empty(len(pts))
    side = np.empty(len(pts), dtype=np.int64)
    foot = np.empty((len(pts), 2))
    for lo in range(0, len(pts), 256):
        p = pts[lo : lo + 256]
        w = p[:, None, :] - a[None, :, :]
        t = np.clip((w[..., 0] * d[:, 0] + w[..., 1] * d[:, 1]) / dd, 0.0, 1.0)
        ox = w[..., 0] - t * d[:, 0]
        oy = w[..., 1] - t * d[:, 1]
        dm = np.sqrt(ox * ox + oy * oy)
        k = np.argmin(dm, axis=1)
        rows = np.arange(len(p))
        dist[lo : lo + 256] = dm[rows, k]
        side[lo : lo + 256] = k
        foot[lo : lo + 256] = a[k] + t[rows, k][:, None] * d[k]
    return dist, side, foot


def special_points(
    rects: list[SideRectangle], poly: SimplePolygon, tau: Tolerance = Tolerance()
) -> list[SpecialPoint]:
    """Interior rectangle corners and interior inner-intersections of sides
    of two different rectangles, each with its shortest connector."""
    segs, owner = _rect_side_array(rects)
    corners = np.concatenate([r.corners for r in rects], axis=0)

    candidates = [corners]
    origins = [np.zeros(len(corners), dtype=np.int64)]

    from .arrangement import _sweep_pairs

    pairs = np.asarray(
        [(i, j) for i, j in _sweep_pairs(segs, tau.tau) if owner[i] != owner[j]],
        dtype=np.int64,
    ).reshape(-1, 2)
    if len(pairs):
        i, j = pairs[:, 0], pairs[:, 1]
        a1, b1 = segs[i, 0:2], segs[i, 2:4]
        a2, b2 = segs[j, 0:2], segs[j, 2:4]
        d1, d2 = b1 - a1, b2 - a2
        w = a2 - a1
        denom = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        c_a2 = d1[:, 0] * w[:, 1] - d1[:, 1] * w[:, 0]
        c_b2 = d1[:, 0] * (b2[:, 1] - a1[:, 1]) - d1[:, 1] * (b2[:, 0] - a1[:, 0])
        c_a1 = d2[:, 0] * (a1[:, 1] - a2[:, 1]) - d2[:, 1] * (a1[:, 0] - a2[:, 0])
        c_b1 = d2[:, 0] * (b1[:, 1] - a2[:, 1]) - d2[:, 1] * (b1[:, 0] - a2[:, 0])
        proper = ((c_a2 > 0) != (c_b2 > 0)) & ((c_a1 > 0) != (c_b1 > 0)) & (denom != 0.0)
        t = np.where(proper, (w[:, 0] * d2[:, 1] - w[:, 1] * d2[:, 0]) / np.where(denom == 0, 1, denom), 0.0)
        u = np.where(proper, (w[:, 0] * d1[:, 1] - w[:, 1] * d1[:, 0]) / np.where(denom == 0, 1, denom), 0.0)
        l1 = np.hypot(d1[:, 0], d1[:, 1])
        l2 = np.hypot(d2[:, 0], d2[:, 1])
        inner = (
            proper
            & (t * l1 > tau.tau)
            & ((1.0 - t) * l1 > tau.tau)
            & (u * l2 > tau.tau)
            & ((1.0 - u) * l2 > tau.tau)
        )
        px = a1[:, 0] + t * d1[:, 0]
        py = a1[:, 1] + t * d1[:, 1]
        cross_pts = np.stack([px[inner], py[inner]], axis=1)
        order = np.lexsort((pairs[inner, 1], pairs[inner, 0]))
        candidates.append(cross_pts[order])
        origins.append(np.ones(len(cross_pts), dtype=np.int64))

    locs = np.concatenate(candidates, axis=0)
    orig = np.concatenate(origins)
    inside = np.array(
        [loc is PointLocation.INSIDE for loc in contains_many(poly, locs, tau)]
    )
    locs = locs[inside]
    orig = orig[inside]

    dist, _, foot = _nearest_boundary_foot(poly, locs)
    keep = dist > tau.tau  # a special point on the boundary has no connector
    locs, orig, foot = locs[keep], orig[keep], foot[keep]

    # dedupe coincident candidates (corners first, then crossings in order)
    scale = 1.0 + float(np.abs(poly.vertices).max())
    snap = max(tau.tau, 1e-12 * scale)
    seen: dict[tuple[int, int], int] = {}
    out: list[SpecialPoint] = []
    for k in range(len(locs)):
        key = (math.floor(locs[k, 0] / snap / 4.0), math.floor(locs[k, 1] / snap / 4.0))
        if key in seen:
            continue
        seen[key] = k
        out.append(
            SpecialPoint(
                location=Point(float(locs[k, 0]), float(locs[k, 1])),
                origin=(
                    SpecialPointOrigin.RECTANGLE_VERTEX
                    if orig[k] == 0
                    else SpecialPointOrigin.INNER_INTERSECTION
                ),
                connector=Segment(
                    Point(float(locs[k, 0]), float(locs[k, 1])),
                    Point(float(foot[k, 0]), float(foot[k, 1])),
                ),
            )
        )
    return out


@dataclass
class Subdivision:
    """The interior arrangement shared by the separating-polygon and path
    constructions; build once per (polygon, eps)."""

    polygon: SimplePolygon
    eps: float
    rects: list[SideRectangle]
    specials: list[SpecialPoint]
    arrangement: Arrangement

    def face_descriptor(self, fid: int) -> dict:
        walk = self.arrangement.faces[fid]
        pts = self.arrangement.vertices[walk]
        return {
            "face": int(fid),
            "area": float(self.arrangement.face_areas[fid]),
            "n_boundary_vertices": int(len(walk)),
            "bbox": [float(pts[:, 0].min()), float(pts[:, 1].min()),
                     float(pts[:, 0].max()), float(pts[:, 1].max())],
        }

    def network_segments(self) -> np.ndarray:
        """Rectangle sides and connectors (the segments a separating-polygon
        boundary may run along), as an (m, 4) array."""
        n_poly = self.polygon.poly.n
        return self.arrangement.S[n_poly:]


def build_subdivision(
    poly: SimplePolygon, eps: float, tau: Tolerance = Tolerance()
) -> Subdivision:
    """Arrangement of polygon sides, in-polygon rectangle parts, and
    connectors; sub-edges outside the polygon are dropped."""
    tau.check_band(eps)
    rects = side_rectangles(poly, eps)
    specials = special_points(rects, poly, tau)
    a, b = poly.side_arrays()
    poly_segs = np.concatenate([a, b], axis=1)
    rect_segs, _ = _rect_side_array(rects)
    conn = np.asarray(
        [
            (sp.connector.a.x, sp.connector.a.y, sp.connector.b.x, sp.connector.b.y)
            for sp in specials
        ],
        dtype=float,
    ).reshape(-1, 4)
    segments = np.concatenate([poly_segs, rect_segs, conn], axis=0)
    arr = Arrangement(segments, tau)
    mids = 0.5 * (arr.vertices[arr.edges[:, 0]] + arr.vertices[arr.edges[:, 1]])
    loc = contains_many(poly, mids, tau)
    keep = np.array([l is not PointLocation.OUTSIDE for l in loc])
    arr.extract_faces(keep)
    return Subdivision(poly, eps, rects, specials, arr)


def _prune_walk(walk: np.ndarray) -> list[int]:
    """Remove doubled excursions (u -> v -> u) from a cyclic face walk."""
    seq = [int(x) for x in walk]
    changed = True
    while changed and len(seq) >= 3:
        changed = False
        m = len(seq)
        for k in range(m):
            if seq[(k - 1) % m] == seq[(k + 1) % m]:
                tip, dup = k, (k + 1) % m
                for idx in sorted((tip, dup), reverse=True):
                    seq.pop(idx)
                changed = True
                break
    return seq


def _merge_collinear(pts: np.ndarray, merge_tol: float) -> np.ndarray:
    """Drop vertices where the walk continues straight ahead (deviation from
    the line through the neighbors at most ~4x the snap tolerance)."""
    out = pts
    for _ in range(8):
        prev = np.roll(out, 1, axis=0)
        nxt = np.roll(out, -1, axis=0)
        d1 = out - prev
        d2 = nxt - out
        cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        dot = d1[:, 0] * d2[:, 0] + d1[:, 1] * d2[:, 1]
        l1 = np.hypot(d1[:, 0], d1[:, 1])
        l2 = np.hypot(d2[:, 0], d2[:, 1])
        straight = (np.abs(cross) <= 4.0 * merge_tol * (l1 + l2)) & (dot > 0)
        keep = ~straight
        if keep.all() or keep.sum() < 3:
            return out
        out = out[keep]
    return out


def _face_polygon(sub: Subdivision, fid: int, tau: Tolerance) -> SimplePolygon:
    arr = sub.arrangement
    seq = _prune_walk(arr.faces[fid])
    if len(seq) < 3:
        raise ConstructionError("face boundary degenerates after pruning")
    if len(set(seq)) != len(seq):
        raise ConstructionError("face boundary is pinched (repeated vertex)")
    pts = arr.vertices[np.asarray(seq, dtype=np.int64)]
    pts = _merge_collinear(pts, max(tau.tau, arr.snap))
    if len(pts) < 3:
        raise ConstructionError("face boundary degenerates after collinear merge")
    try:
        return certify_simple(polygon_from_points(pts), tau)
    except ValueError as exc:
        raise ConstructionError(f"face boundary rejected: {exc}") from exc


def separating_polygon(
    poly: SimplePolygon,
    eps: float,
    A,
    tau: Tolerance = Tolerance(),
    curve_samples: np.ndarray | None = None,
    subdivision: Subdivision | None = None,
) -> SeparatingPolygon:
    """The face of the interior subdivision containing A, certified simple,
    with every vertex a special point, and (when fine curve samples are
    supplied) no curve point in its interior."""
    if classify(poly, eps, A, tau) is not RegionLabel.INTERIOR:
        raise ValueError("reference point must classify as Interior")
    sub = subdivision if subdivision is not None else build_subdivision(poly, eps, tau)
    arr = sub.arrangement
    fid = arr.locate(A)
    if fid == arr.outer_face:
        raise ConstructionError("reference point fell into the unbounded face")
    prime = _face_polygon(sub, fid, tau)

    diagnostics: dict = {"face": sub.face_descriptor(fid), "n_special": len(sub.specials)}
    provenance_tol = 8.0 * max(arr.snap, tau.tau)
    vtx = prime.vertices
    if sub.specials:
        # Ideally every corner is a special point.  A connector may exit its
        # special point through the face and get crossed by a rectangle side
        # arbitrarily nearby, so corners on connectors are tolerated and
        # counted; what is certified is that every corner lies on the
        # rectangle-side/connector network.
        sp = np.asarray([(s.location.x, s.location.y) for s in sub.specials])
        d2 = (vtx[:, None, 0] - sp[None, :, 0]) ** 2 + (vtx[:, None, 1] - sp[None, :, 1]) ** 2
        vertex_to_special = np.sqrt(d2.min(axis=1))
        diagnostics["max_vertex_to_special"] = float(vertex_to_special.max())
        diagnostics["non_special_vertices"] = int((vertex_to_special > provenance_tol).sum())
    net = sub.network_segments()
    a_net = net[:, 0:2]
    d_net = net[:, 2:4] - a_net
    dd_net = np.sum(d_net * d_net, axis=1)
    worst_net = 0.0
    for lo in range(0, len(vtx), 256):
        p = vtx[lo : lo + 256]
        w = p[:, None, :] - a_net[None, :, :]
        tproj = np.clip((w[..., 0] * d_net[:, 0] + w[..., 1] * d_net[:, 1]) / dd_net, 0.0, 1.0)
        ox = w[..., 0] - tproj * d_net[:, 0]
        oy = w[..., 1] - tproj * d_net[:, 1]
        worst_net = max(worst_net, float(np.sqrt(ox * ox + oy * oy).min(axis=1).max()))
    diagnostics["max_vertex_to_network"] = worst_net
    if worst_net > provenance_tol:
        raise ConstructionError(
            f"separating polygon vertex {worst_net:.3g} off the rectangle/connector"
            f" network (tolerance {provenance_tol:.3g})"
        )
    if curve_samples is not None:
        loc = contains_many(prime, np.asarray(curve_samples, dtype=float), tau)
        bad = sum(1 for l in loc if l is PointLocation.INSIDE)
        diagnostics["curve_samples_inside"] = int(bad)
        if bad:
            raise ConstructionError(
                f"{bad} curve samples fell inside the separating polygon"
            )
    return SeparatingPolygon(polygon=prime, face_id=fid, diagnostics=diagnostics)


# -- path routing ------------------------------------------------------------


def _ensure_ccw(pts: np.ndarray) -> np.ndarray:
    area2 = float(np.sum(pts[:, 0] * np.roll(pts[:, 1], -1) - np.roll(pts[:, 0], -1) * pts[:, 1]))
    return pts if area2 > 0 else pts[::-1].copy()


def _ear_clip(pts: np.ndarray) -> list[tuple[int, int, int]]:
    """Triangulate a simple CCW polygon; returns index triples."""
    n = len(pts)
    idx = list(range(n))
    tris: list[tuple[int, int, int]] = []
    scale = 1.0 + float(np.abs(pts).max())
    tol = 1e-14 * scale * scale
    guard = 0
    while len(idx) > 3 and guard < 4 * n * n:
        clipped = False
        m = len(idx)
        for k in range(m):
            i0, i1, i2 = idx[(k - 1) % m], idx[k], idx[(k + 1) % m]
            a, b, c = pts[i0], pts[i1], pts[i2]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cross <= tol:
                continue  # reflex or flat corner
            others = np.asarray([i for i in idx if i not in (i0, i1, i2)])
            p = pts[others]
            s1 = (b[0] - a[0]) * (p[:, 1] - a[1]) - (b[1] - a[1]) * (p[:, 0] - a[0])
            s2 = (c[0] - b[0]) * (p[:, 1] - b[1]) - (c[1] - b[1]) * (p[:, 0] - b[0])
            s3 = (a[0] - c[0]) * (p[:, 1] - c[1]) - (a[1] - c[1]) * (p[:, 0] - c[0])
            if ((s1 > -tol) & (s2 > -tol) & (s3 > -tol)).any():
                continue  # another vertex inside the candidate ear
            tris.append((i0, i1, i2))
            idx.pop(k)
            clipped = True
            break
        guard += 1
        if not clipped:
            # numerically stuck: clip the least-reflex corner to make progress
            best_k, best_cross = 0, -np.inf
            m = len(idx)
            for k in range(m):
                i0, i1, i2 = idx[(k - 1) % m], idx[k], idx[(k + 1) % m]
                a, b, c = pts[i0], pts[i1], pts[i2]
                cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
                if cr > best_cross:
                    best_cross, best_k = cr, k
            m = len(idx)
            tris.append((idx[(best_k - 1) % m], idx[best_k], idx[(best_k + 1) % m]))
            idx.pop(best_k)
    tris.append((idx[0], idx[1], idx[2]))
    return tris


def _tri_containing(pts: np.ndarray, tris: list[tuple[int, int, int]], q) -> int:
    t = np.asarray(tris)
    a, b, c = pts[t[:, 0]], pts[t[:, 1]], pts[t[:, 2]]
    qx, qy = float(q[0]), float(q[1])
    s1 = (b[:, 0] - a[:, 0]) * (qy - a[:, 1]) - (b[:, 1] - a[:, 1]) * (qx - a[:, 0])
    s2 = (c[:, 0] - b[:, 0]) * (qy - b[:, 1]) - (c[:, 1] - b[:, 1]) * (qx - b[:, 0])
    s3 = (a[:, 0] - c[:, 0]) * (qy - c[:, 1]) - (a[:, 1] - c[:, 1]) * (qx - c[:, 0])
    scale = 1.0 + float(np.abs(pts).max())
    tol = 1e-12 * scale * scale
    ok = np.flatnonzero((s1 >= -tol) & (s2 >= -tol) & (s3 >= -tol))
    if ok.size == 0:
        return -1
    return int(ok[0])


def _seg_clearance(p: np.ndarray, q: np.ndarray, poly) -> float:
    """Exact min distance from segment (p, q) to the polygon boundary."""
    a, b = poly.side_arrays()
    d2 = b - a
    d1 = q - p
    c1 = d1[0] * (a[:, 1] - p[1]) - d1[1] * (a[:, 0] - p[0])
    c2 = d1[0] * (b[:, 1] - p[1]) - d1[1] * (b[:, 0] - p[0])
    c3 = d2[:, 0] * (p[1] - a[:, 1]) - d2[:, 1] * (p[0] - a[:, 0])
    c4 = d2[:, 0] * (q[1] - a[:, 1]) - d2[:, 1] * (q[0] - a[:, 0])
    if (((c1 > 0) != (c2 > 0)) & ((c3 > 0) != (c4 > 0))).any():
        return 0.0

    def pt_rows(pnt):
        w = pnt[None, :] - a
        dd = np.sum(d2 * d2, axis=1)
        t = np.clip((w[:, 0] * d2[:, 0] + w[:, 1] * d2[:, 1]) / dd, 0.0, 1.0)
        off = w - t[:, None] * d2
        return np.hypot(off[:, 0], off[:, 1]).min()

    def seg_pt(pnt_arr):
        dd = float(d1 @ d1)
        if dd == 0.0:
            return np.hypot(pnt_arr[:, 0] - p[0], pnt_arr[:, 1] - p[1]).min()
        t = np.clip(((pnt_arr[:, 0] - p[0]) * d1[0] + (pnt_arr[:, 1] - p[1]) * d1[1]) / dd, 0.0, 1.0)
        off_x = pnt_arr[:, 0] - p[0] - t * d1[0]
        off_y = pnt_arr[:, 1] - p[1] - t * d1[1]
        return np.hypot(off_x, off_y).min()

    return float(min(pt_rows(p), pt_rows(q), seg_pt(a), seg_pt(b)))


def _crosses_boundary(p: np.ndarray, q: np.ndarray, pts: np.ndarray) -> bool:
    a = pts
    b = np.roll(pts, -1, axis=0)
    d1 = q - p
    d2 = b - a
    c1 = d1[0] * (a[:, 1] - p[1]) - d1[1] * (a[:, 0] - p[0])
    c2 = d1[0] * (b[:, 1] - p[1]) - d1[1] * (b[:, 0] - p[0])
    c3 = d2[:, 0] * (p[1] - a[:, 1]) - d2[:, 1] * (p[0] - a[:, 0])
    c4 = d2[:, 0] * (q[1] - a[:, 1]) - d2[:, 1] * (q[0] - a[:, 0])
    return bool((((c1 > 0) != (c2 > 0)) & ((c3 > 0) != (c4 > 0))).any())


PATH_SAFETY = 0.5


def connect(
    poly: SimplePolygon,
    eps: float,
    A,
    B,
    tau: Tolerance = Tolerance(),
    subdivision: Subdivision | None = None,
) -> PathPolyline:
    """Polyline from A to B staying inside the polygon with clearance above
    eps * 0.5 throughout.

    Both endpoints must classify Interior and fall in the same face of the
    interior subdivision; otherwise NotSameFaceError reports both faces.
    """
    a_pt = np.asarray((A.x, A.y) if isinstance(A, Point) else A, dtype=float)
    b_pt = np.asarray((B.x, B.y) if isinstance(B, Point) else B, dtype=float)
    if (a_pt == b_pt).all():
        if classify(poly, eps, a_pt, tau) is not RegionLabel.INTERIOR:
            raise ValueError("endpoint must classify as Interior")
        return PathPolyline(a_pt.reshape(1, 2))
    for name, p in (("A", a_pt), ("B", b_pt)):
        if classify(poly, eps, p, tau) is not RegionLabel.INTERIOR:
            raise ValueError(f"endpoint {name} must classify as Interior")
    sub = subdivision if subdivision is not None else build_subdivision(poly, eps, tau)
    arr = sub.arrangement
    fa = arr.locate(a_pt)
    fb = arr.locate(b_pt)
    if fa != fb:
        raise NotSameFaceError(
            "endpoints lie in different interior faces",
            face_a=sub.face_descriptor(fa),
            face_b=sub.face_descriptor(fb),
        )
    prime = _face_polygon(sub, fa, tau)
    pts = _ensure_ccw(prime.vertices)
    tris = _ear_clip(pts)
    ta = _tri_containing(pts, tris, a_pt)
    tb = _tri_containing(pts, tris, b_pt)
    if ta < 0 or tb < 0:
        raise ConstructionError("endpoint not covered by the face triangulation")

    # dual-graph breadth-first search over shared diagonals
    edge_tris: dict[tuple[int, int], list[int]] = {}
    for tid, (i, j, k) in enumerate(tris):
        for u, v in ((i, j), (j, k), (k, i)):
            key = (u, v) if u < v else (v, u)
            edge_tris.setdefault(key, []).append(tid)
    parent = {ta: (None, None)}
    frontier = [ta]
    while frontier and tb not in parent:
        nxt = []
        for tid in frontier:
            i, j, k = tris[tid]
            for u, v in ((i, j), (j, k), (k, i)):
                key = (u, v) if u < v else (v, u)
                for other in edge_tris[key]:
                    if other not in parent:
                        parent[other] = (tid, key)
                        nxt.append(other)
        frontier = nxt
    if tb not in parent:
        raise ConstructionError("face triangulation is not connected")  # pragma: no cover

    waypoints = [b_pt]
    tid = tb
    while parent[tid][0] is not None:
        prev, key = parent[tid]
        waypoints.append(0.5 * (pts[key[0]] + pts[key[1]]))
        tid = prev
    waypoints.append(a_pt)
    waypoints.reverse()

    min_clear = PATH_SAFETY * eps

    def valid(p, q):
        if (p == q).all():
            return True
        if _crosses_boundary(p, q, pts):
            return False
        return _seg_clearance(p, q, poly) > min_clear

    out = [waypoints[0]]
    k = 0
    while k < len(waypoints) - 1:
        j = len(waypoints) - 1
        while j > k + 1 and not valid(waypoints[k], waypoints[j]):
            j -= 1
        if not valid(waypoints[k], waypoints[j]):
            raise ConstructionError("path segment lost its clearance margin")
        out.append(waypoints[j])
        k = j
    path = [out[0]]
    for p in out[1:]:
        if not (p == path[-1]).all():
            path.append(p)
    result = PathPolyline(np.asarray(path))
    worst = min(
        _seg_clearance(result.points[k], result.points[k + 1], poly)
        for k in range(len(result.points) - 1)
    ) if len(result.points) > 1 else float("inf")
    if not worst > min_clear:
        raise ConstructionError(f"routed path clearance {worst:.3g} below {min_clear:.3g}")
    return result
