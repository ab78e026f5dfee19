"""Planar straight-line arrangement with half-edge face traversal.

Input segments are split at every pairwise intersection, split points are
merged into canonical vertices on a snapping grid, and faces are extracted
by walking half-edges (next = clockwise predecessor of the reversed edge
around its head), which traverses every face with its interior on the left.
The construction is incremental and single-threaded per instance; the
finished structure is immutable in practice and safe to share.

Point location shoots a horizontal ray and reads the face of the first
upward half-edge crossed, so queries stay O(edges) and need no per-face
containment scans.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConstructionError
from .primitives import (
    OverlapIntersection,
    Point,
    PointIntersection,
    Segment,
    Tolerance,
    segment_intersection,
)


class _VertexRegistry:
    """Snapping grid: points within ``snap`` of a registered vertex merge
    into it; the first-seen coordinates are canonical."""

    def __init__(self, snap: float):
        self.snap = snap
        self.cells: dict[tuple[int, int], list[int]] = {}
        self.coords: list[tuple[float, float]] = []

    def add(self, x: float, y: float) -> int:
        s = self.snap
        ci = math.floor(x / s)
        cj = math.floor(y / s)
        for di in (0, -1, 1):
            for dj in (0, -1, 1):
                for vid in self.cells.get((ci + di, cj + dj), ()):
                    cx, cy = self.coords[vid]
                    if abs(cx - x) <= s and abs(cy - y) <= s:
                        return vid
        vid = len(self.coords)
        self.coords.append((x, y))
        self.cells.setdefault((ci, cj), []).append(vid)
        return vid


def _sweep_pairs(S: np.ndarray, margin: float) -> list[tuple[int, int]]:
    """Candidate segment pairs whose bounding boxes overlap (inflated by
    margin), by an x-interval sweep."""
    minx = np.minimum(S[:, 0], S[:, 2])
    maxx = np.maximum(S[:, 0], S[:, 2])
    miny = np.minimum(S[:, 1], S[:, 3])
    maxy = np.maximum(S[:, 1], S[:, 3])
    order = np.argsort(minx, kind="stable")
    active: list[int] = []
    pairs: list[tuple[int, int]] = []
    for idx in order:
        x0 = minx[idx] - margin
        if active:
            active = [k for k in active if maxx[k] >= x0]
            lo_y = miny[idx] - margin
            hi_y = maxy[idx] + margin
            for k in active:
                if miny[k] <= hi_y and maxy[k] >= lo_y:
                    pairs.append((k, int(idx)) if k < idx else (int(idx), k))
        active.append(int(idx))
    return pairs


class Arrangement:
    def __init__(self, segments: np.ndarray, tau: Tolerance = Tolerance(), snap: float | None = None):
        S = np.ascontiguousarray(segments, dtype=float)
        if S.ndim != 2 or S.shape[1] != 4:
            raise ValueError("segments must be an (m, 4) array of x1,y1,x2,y2")
        self.S = S
        self.tau = tau
        scale = 1.0 + float(np.abs(S).max())
        self.snap = snap if snap is not None else max(tau.tau, 1e-12 * scale)
        self._split()

    # -- construction ------------------------------------------------------

    def _split(self) -> None:
        S = self.S
        m = len(S)
        tau = self.tau
        splits: list[list[tuple[float, float, float]]] = [
            [(0.0, S[k, 0], S[k, 1]), (1.0, S[k, 2], S[k, 3])] for k in range(m)
        ]
        pairs = _sweep_pairs(S, max(self.snap, tau.tau))
        if pairs:
            P = np.asarray(pairs)
            i, j = P[:, 0], P[:, 1]
            a1, b1 = S[i, 0:2], S[i, 2:4]
            a2, b2 = S[j, 0:2], S[j, 2:4]
            d1, d2 = b1 - a1, b2 - a2
            w = a2 - a1
            c_a2 = d1[:, 0] * w[:, 1] - d1[:, 1] * w[:, 0]
            c_b2 = d1[:, 0] * (b2[:, 1] - a1[:, 1]) - d1[:, 1] * (b2[:, 0] - a1[:, 0])
            c_a1 = d2[:, 0] * (a1[:, 1] - a2[:, 1]) - d2[:, 1] * (a1[:, 0] - a2[:, 0])
            c_b1 = d2[:, 0] * (b1[:, 1] - a2[:, 1]) - d2[:, 1] * (b1[:, 0] - a2[:, 0])
            mags = np.maximum.reduce(
                [np.abs(a1).max(axis=1), np.abs(b1).max(axis=1),
                 np.abs(a2).max(axis=1), np.abs(b2).max(axis=1)]
            )
            areatol = 2.0 * tau.tau * mags * mags
            near_zero = (
                (np.abs(c_a2) <= areatol)
                | (np.abs(c_b2) <= areatol)
                | (np.abs(c_a1) <= areatol)
                | (np.abs(c_b1) <= areatol)
            )
            proper = ~near_zero & ((c_a2 > 0) != (c_b2 > 0)) & ((c_a1 > 0) != (c_b1 > 0))
            if proper.any():
                denom = d1[proper, 0] * d2[proper, 1] - d1[proper, 1] * d2[proper, 0]
                t = (w[proper, 0] * d2[proper, 1] - w[proper, 1] * d2[proper, 0]) / denom
                u = (w[proper, 0] * d1[proper, 1] - w[proper, 1] * d1[proper, 0]) / denom
                px = a1[proper, 0] + t * d1[proper, 0]
                py = a1[proper, 1] + t * d1[proper, 1]
                for ii, jj, tt, uu, x, y in zip(i[proper], j[proper], t, u, px, py):
                    splits[ii].append((float(tt), float(x), float(y)))
                    splits[jj].append((float(uu), float(x), float(y)))
            for ii, jj in P[near_zero]:
                self._split_pair_exact(int(ii), int(jj), splits)

        reg = _VertexRegistry(self.snap)
        edge_ids: dict[tuple[int, int], int] = {}
        edge_list: list[tuple[int, int]] = []
        for k in range(m):
            items = sorted(splits[k], key=lambda it: it[0])
            vids: list[int] = []
            for _, x, y in items:
                vid = reg.add(x, y)
                if not vids or vids[-1] != vid:
                    vids.append(vid)
            for u, v in zip(vids[:-1], vids[1:]):
                key = (u, v) if u < v else (v, u)
                if key not in edge_ids:
                    edge_ids[key] = len(edge_list)
                    edge_list.append(key)
        self.vertices = np.asarray(reg.coords, dtype=float).reshape(-1, 2)
        self.edges = np.asarray(edge_list, dtype=np.int64).reshape(-1, 2)

    def _split_pair_exact(self, i: int, j: int, splits) -> None:
        S = self.S

        def seg(k):
            return Segment(Point(S[k, 0], S[k, 1]), Point(S[k, 2], S[k, 3]))

        def param(k, p):
            dx, dy = S[k, 2] - S[k, 0], S[k, 3] - S[k, 1]
            t = ((p.x - S[k, 0]) * dx + (p.y - S[k, 1]) * dy) / (dx * dx + dy * dy)
            return min(1.0, max(0.0, t))

        res = segment_intersection(seg(i), seg(j), self.tau)
        if isinstance(res, PointIntersection):
            pts = [res.point]
        elif isinstance(res, OverlapIntersection):
            pts = [res.segment.a, res.segment.b]
        else:
            return
        for p in pts:
            splits[i].append((param(i, p), p.x, p.y))
            splits[j].append((param(j, p), p.x, p.y))

    # -- faces -------------------------------------------------------------

    def extract_faces(self, keep: np.ndarray | None = None) -> None:
        """Build adjacency from the (optionally filtered) edge set and walk
        every face.  Sets .faces (vid walks), .face_areas, .outer_face."""
        edges = self.edges if keep is None else self.edges[keep]
        coords = self.vertices
        nbrs: dict[int, list[int]] = {}
        for u, v in edges:
            nbrs.setdefault(int(u), []).append(int(v))
            nbrs.setdefault(int(v), []).append(int(u))
        pos: dict[tuple[int, int], int] = {}
        for u, lst in nbrs.items():
            d = coords[lst] - coords[u]
            ang = np.arctan2(d[:, 1], d[:, 0])
            order = np.argsort(ang, kind="stable")
            nbrs[u] = [lst[k] for k in order]
            for idx, v in enumerate(nbrs[u]):
                pos[(u, v)] = idx

        face_of: dict[tuple[int, int], int] = {}
        faces: list[np.ndarray] = []
        areas: list[float] = []
        for u0, lst in nbrs.items():
            for v0 in lst:
                if (u0, v0) in face_of:
                    continue
                fid = len(faces)
                walk = []
                u, v = u0, v0
                area2 = 0.0
                while (u, v) not in face_of:
                    face_of[(u, v)] = fid
                    walk.append(u)
                    x1, y1 = coords[u]
                    x2, y2 = coords[v]
                    area2 += x1 * y2 - x2 * y1
                    ring = nbrs[v]
                    k = pos[(v, u)]
                    u, v = v, ring[(k - 1) % len(ring)]
                faces.append(np.asarray(walk, dtype=np.int64))
                areas.append(0.5 * area2)
        self.active_edges = edges
        self.neighbors = nbrs
        self.face_of = face_of
        self.faces = faces
        self.face_areas = np.asarray(areas)
        self.outer_face = int(np.argmin(self.face_areas)) if faces else -1

    def face_walk_points(self, fid: int) -> np.ndarray:
        return self.vertices[self.faces[fid]]

    def locate(self, p) -> int:
        """Face containing p, via the first upward edge a rightward ray hits.

        Returns the outer face id if p lies outside every bounded face.
        Raises if p sits on the structure itself (within snap).
        """
        px, py = (p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1]))
        e = self.active_edges
        if len(e) == 0:
            raise ConstructionError("empty arrangement")
        c = self.vertices
        x1, y1 = c[e[:, 0], 0], c[e[:, 0], 1]
        x2, y2 = c[e[:, 1], 0], c[e[:, 1], 1]
        step = 4.0 * max(self.snap, 1e-300)
        for attempt in range(64):
            yq = py + attempt * step * math.sqrt(2.0)
            d1 = y1 - yq
            d2 = y2 - yq
            if min(np.abs(d1).min(), np.abs(d2).min()) <= self.snap:
                continue
            straddle = (d1 > 0) != (d2 > 0)
            idx = np.flatnonzero(straddle)
            if idx.size == 0:
                return self.outer_face
            frac = d1[idx] / (d1[idx] - d2[idx])
            xc = x1[idx] + frac * (x2[idx] - x1[idx])
            ahead = xc > px
            if not ahead.any():
                return self.outer_face
            if np.abs(xc[ahead] - px).min() <= self.snap:
                raise ConstructionError("query point lies on the arrangement")
            sel = idx[ahead][np.argmin(xc[ahead])]
            u, v = int(e[sel, 0]), int(e[sel, 1])
            if c[u, 1] > c[v, 1]:
                u, v = v, u  # upward directed half-edge
            return self.face_of[(u, v)]
        raise ConstructionError("point location failed to clear degeneracies")
