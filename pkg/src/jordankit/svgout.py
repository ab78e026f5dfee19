"""SVG rendering of curves, polygons, bands, witnesses, and paths.

Output uses a y-up coordinate system: geometry keeps its natural
coordinates inside a scale(1,-1) group, and the viewBox is fitted to the
bounding box of whatever is drawn, with a 10% margin.
"""

from __future__ import annotations

import numpy as np


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _poly_points(pts: np.ndarray) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pts)


def render_svg(
    out_path,
    curve=None,
    polygon=None,
    eps: float | None = None,
    witness: dict | None = None,
    separating=None,
    path_points=None,
    curve_samples: int = 2048,
) -> None:
    layers: list[str] = []
    boxes: list[np.ndarray] = []

    curve_pts = None
    if curve is not None:
        ts = np.arange(curve_samples, dtype=float) / curve_samples
        curve_pts = curve.points(ts)
        boxes.append(curve_pts)
    if polygon is not None:
        boxes.append(polygon.vertices)
    if separating is not None:
        boxes.append(separating.vertices)
    if path_points is not None:
        boxes.append(np.asarray(path_points, dtype=float).reshape(-1, 2))
    if witness is not None:
        boxes.append(np.asarray([witness["A"], witness["B"]], dtype=float))
    if not boxes:
        raise ValueError("nothing to render")

    allpts = np.concatenate(boxes, axis=0)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    margin = 0.1 * float(span.max())
    width = float(span[0] + 2 * margin)
    height = float(span[1] + 2 * margin)
    stroke = 0.004 * max(width, height)
    view = (
        f"{_fmt(float(lo[0] - margin))} {_fmt(float(-hi[1] - margin))} "
        f"{_fmt(width)} {_fmt(height)}"
    )

    if polygon is not None and eps is not None:
        layers.append(
            f'<polygon points="{_poly_points(polygon.vertices)}" fill="none" '
            f'stroke="#9ecae1" stroke-width="{_fmt(2 * eps)}" '
            'stroke-linejoin="round" stroke-linecap="round" opacity="0.45"/>'
        )
    if curve_pts is not None:
        closed = np.concatenate([curve_pts, curve_pts[:1]], axis=0)
        layers.append(
            f'<polyline points="{_poly_points(closed)}" fill="none" '
            f'stroke="#1f77b4" stroke-width="{_fmt(stroke)}"/>'
        )
    if polygon is not None:
        layers.append(
            f'<polygon points="{_poly_points(polygon.vertices)}" fill="none" '
            f'stroke="#222222" stroke-width="{_fmt(0.6 * stroke)}"/>'
        )
    if separating is not None:
        layers.append(
            f'<polygon points="{_poly_points(separating.vertices)}" fill="none" '
            f'stroke="#d62728" stroke-width="{_fmt(0.8 * stroke)}" stroke-dasharray="'
            f'{_fmt(3 * stroke)} {_fmt(2 * stroke)}"/>'
        )
    if path_points is not None:
        pp = np.asarray(path_points, dtype=float).reshape(-1, 2)
        layers.append(
            f'<polyline points="{_poly_points(pp)}" fill="none" '
            f'stroke="#2ca02c" stroke-width="{_fmt(1.2 * stroke)}"/>'
        )
    if witness is not None:
        g = witness["gamma"]
        layers.append(
            f'<line x1="{_fmt(g[0][0])}" y1="{_fmt(-g[0][1])}" '
            f'x2="{_fmt(g[1][0])}" y2="{_fmt(-g[1][1])}" '
            f'stroke="#7f7f7f" stroke-width="{_fmt(0.5 * stroke)}" '
            f'stroke-dasharray="{_fmt(2 * stroke)} {_fmt(2 * stroke)}"/>'
        )
        colors = {"A": "#000000", "B": "#000000", "C": "#ff7f0e", "D": "#ff7f0e", "E": "#d62728"}
        for name, color in colors.items():
            x, y = witness[name]
            layers.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(2 * stroke)}" '
                f'fill="{color}"><title>{name}</title></circle>'
            )

    # geometry is emitted with negated y, so larger y renders higher (y-up)
    body = "\n  ".join(layers)
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">\n'
        f"  {body}\n</svg>\n"
    )
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(svg)
