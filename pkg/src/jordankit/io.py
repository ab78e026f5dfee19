"""JSON readers and writers for curves, polygons, reports, and dumps.

All files are UTF-8 JSON.  Writers sort keys and keep a fixed layout so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .curves import ClosedCurve, EllipseCurve, FourierCurve, ParamPolygon, PolylineCurve


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# -- curves -------------------------------------------------------------------


def curve_from_dict(d: dict) -> ClosedCurve:
    kind = d.get("type")
    if kind == "fourier":
        x, y = d["x"], d["y"]
        return FourierCurve(
            x.get("a0", 0.0), x.get("a", []), x.get("b", []),
            y.get("a0", 0.0), y.get("a", []), y.get("b", []),
        )
    if kind == "ellipse":
        return EllipseCurve(
            d["a"], d["b"], tuple(d.get("center", (0.0, 0.0))), d.get("rotation", 0.0)
        )
    if kind == "polyline":
        return PolylineCurve(d["points"])
    raise ValueError(f"unknown curve type {kind!r}")


def curve_to_dict(curve: ClosedCurve) -> dict:
    if isinstance(curve, FourierCurve):
        return {
            "type": "fourier",
            "x": {"a0": curve.x_a0, "a": curve.x_cos.tolist(), "b": curve.x_sin.tolist()},
            "y": {"a0": curve.y_a0, "a": curve.y_cos.tolist(), "b": curve.y_sin.tolist()},
        }
    if isinstance(curve, EllipseCurve):
        return {
            "type": "ellipse",
            "a": curve.a,
            "b": curve.b,
            "center": list(curve.center),
            "rotation": curve.rotation,
        }
    if isinstance(curve, PolylineCurve):
        return {"type": "polyline", "points": curve.pts.tolist()}
    raise ValueError(f"cannot serialize curve of type {type(curve).__name__}")


def load_curve(path) -> ClosedCurve:
    return curve_from_dict(read_json(path))


# -- polygons -----------------------------------------------------------------


def polygon_to_dict(poly) -> dict:
    p = getattr(poly, "poly", poly)  # unwrap SimplePolygon
    return {"vertices": p.vertices.tolist(), "params": p.params.tolist()}


def polygon_from_dict(d: dict) -> ParamPolygon:
    return ParamPolygon(np.asarray(d["vertices"], dtype=float), np.asarray(d["params"], dtype=float))


def load_polygon(path) -> ParamPolygon:
    return polygon_from_dict(read_json(path))


# -- reports ------------------------------------------------------------------


def witness_to_dict(report) -> dict:
    return {
        "A": [report.A.x, report.A.y],
        "B": [report.B.x, report.B.y],
        "gamma": [[report.gamma.a.x, report.gamma.a.y], [report.gamma.b.x, report.gamma.b.y]],
        "C": [report.C.x, report.C.y],
        "D": [report.D.x, report.D.y],
        "E": [report.E.x, report.E.y],
        "clearance": report.clearance,
        "diameter_indices": list(report.diameter_indices),
        "notes": list(report.notes),
    }


def path_to_dict(path_polyline) -> dict:
    pts = getattr(path_polyline, "points", path_polyline)
    return {"points": np.asarray(pts, dtype=float).tolist()}


def load_path(path) -> np.ndarray:
    return np.asarray(read_json(path)["points"], dtype=float)


def subdivision_faces_dict(sub, interior_face: int) -> dict:
    """Face dump: boundary point lists with role tags."""
    arr = sub.arrangement
    faces = []
    for fid in range(len(arr.faces)):
        if fid == arr.outer_face:
            role = "exterior"
        elif fid == interior_face:
            role = "interior-face"
        else:
            role = "band"
        faces.append(
            {"boundary": arr.face_walk_points(fid).tolist(), "role": role}
        )
    return {"faces": faces}
