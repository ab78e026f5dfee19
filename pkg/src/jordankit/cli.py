"""Command-line entry point.

Subcommands: sample, simplify, classify, witness, separate, path, fuzz,
render.  All file I/O is UTF-8 JSON except SVG output.  Exit codes: 0 on
success, 1 when a construction fails, 2 on invalid input, 3 when a fuzz run
reports property violations.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .connectivity import build_subdivision, connect, separating_polygon
from .curves import auto_band_radius
from .errors import JordanKitError
from .fuzz import FuzzConfig, run_fuzz
from .primitives import Point, Tolerance
from .regions import classify, interior_witness
from .simplifier import certify_simple, simplify
from .svgout import render_svg


def _write_or_print(obj, out):
    if out:
        io.write_json(obj, out)
    else:
        sys.stdout.write(io.dumps(obj))


def _resolve_eps(args, poly):
    """--eps auto derives the band radius from the curve and validates it
    against the injectivity gap; a number is taken as given."""
    if args.eps != "auto":
        eps = float(args.eps)
        if not eps > 0:
            raise ValueError("--eps must be positive")
        return eps
    if not getattr(args, "curve", None):
        raise ValueError("--eps auto needs --curve")
    curve = io.load_curve(args.curve)
    eps, _gap = auto_band_radius(curve, poly.poly, m=args.m)
    return eps


def _cmd_sample(args):
    curve = io.load_curve(args.curve)
    from .curves import sample

    poly = sample(curve, args.n)
    _write_or_print(io.polygon_to_dict(poly), args.out)
    return 0


def _cmd_simplify(args):
    poly = io.load_polygon(args.poly)
    simp = simplify(poly, Tolerance(args.tau), accelerate=args.accelerate)
    _write_or_print(io.polygon_to_dict(simp), args.out)
    return 0


def _cmd_classify(args):
    tau = Tolerance(args.tau)
    poly = certify_simple(io.load_polygon(args.poly), tau)
    eps = _resolve_eps(args, poly)
    label = classify(poly, eps, Point(args.point[0], args.point[1]), tau)
    print(label.value)
    return 0


def _cmd_witness(args):
    tau = Tolerance(args.tau)
    poly = certify_simple(io.load_polygon(args.poly), tau)
    eps = _resolve_eps(args, poly) if args.eps else None
    report = interior_witness(poly, tau, eps=eps)
    _write_or_print(io.witness_to_dict(report), args.out)
    return 0


def _cmd_separate(args):
    tau = Tolerance(args.tau)
    poly = certify_simple(io.load_polygon(args.poly), tau)
    eps = _resolve_eps(args, poly)
    samples = None
    if args.curve:
        curve = io.load_curve(args.curve)
        fine = 64 * poly.poly.n
        samples = curve.points(np.arange(fine) / fine)
    sub = build_subdivision(poly, eps, tau)
    sep = separating_polygon(
        poly, eps, Point(args.point[0], args.point[1]), tau,
        curve_samples=samples, subdivision=sub,
    )
    out = {
        "eps": eps,
        "separating_polygon": io.polygon_to_dict(sep.polygon),
        **io.subdivision_faces_dict(sub, sep.face_id),
    }
    _write_or_print(out, args.out)
    return 0


def _cmd_path(args):
    tau = Tolerance(args.tau)
    poly = certify_simple(io.load_polygon(args.poly), tau)
    eps = _resolve_eps(args, poly)
    path = connect(
        poly, eps,
        Point(args.src[0], args.src[1]), Point(args.dst[0], args.dst[1]), tau,
    )
    _write_or_print(io.path_to_dict(path), args.out)
    return 0


def _cmd_fuzz(args):
    cfg = FuzzConfig(
        seed=args.seed, cases=args.cases, n=args.n, m=args.m,
        tau=args.tau, deep=args.deep, workers=args.workers,
    )
    report = run_fuzz(cfg)
    _write_or_print(report, args.out)
    return 3 if report["summary"]["findings"] else 0


def _cmd_render(args):
    curve = io.load_curve(args.curve) if args.curve else None
    polygon = None
    if args.poly:
        polygon = certify_simple(io.load_polygon(args.poly), Tolerance(args.tau))
    witness = io.read_json(args.witness) if args.witness else None
    separating = None
    if args.separating:
        data = io.read_json(args.separating)
        separating = io.polygon_from_dict(data.get("separating_polygon", data))
    path_points = io.load_path(args.path) if args.path else None
    render_svg(
        args.out,
        curve=curve,
        polygon=polygon,
        eps=args.eps,
        witness=witness,
        separating=separating,
        path_points=path_points,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jordankit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, eps=False):
        p.add_argument("--tau", type=float, default=1e-9, help="predicate slack")
        p.add_argument("--m", type=int, default=16, help="sub-samples per parameter interval")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        if eps:
            p.add_argument("--eps", default="auto", help="band radius, or 'auto'")
            p.add_argument("--curve", default=None, help="curve JSON (needed for --eps auto)")

    p = sub.add_parser("sample", help="sample a curve into a parameterized polygon")
    p.add_argument("--curve", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("simplify", help="remove illegal self-intersections")
    p.add_argument("--poly", required=True)
    p.add_argument("--accelerate", action="store_true", help="use the sweep scan")
    common(p)
    p.set_defaults(fn=_cmd_simplify)

    p = sub.add_parser("classify", help="Interior/Exterior/BoundaryBand for a point")
    p.add_argument("--poly", required=True)
    p.add_argument("--point", type=float, nargs=2, required=True)
    common(p, eps=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("witness", help="construct a certified interior point")
    p.add_argument("--poly", required=True)
    common(p)
    p.add_argument("--eps", default=None, help="band radius, or 'auto' (diagnostics only)")
    p.add_argument("--curve", default=None)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("separate", help="separating polygon around an interior point")
    p.add_argument("--poly", required=True)
    p.add_argument("--point", type=float, nargs=2, required=True)
    common(p, eps=True)
    p.set_defaults(fn=_cmd_separate)

    p = sub.add_parser("path", help="interior path between two points")
    p.add_argument("--poly", required=True)
    p.add_argument("--from", dest="src", type=float, nargs=2, required=True)
    p.add_argument("--to", dest="dst", type=float, nargs=2, required=True)
    common(p, eps=True)
    p.set_defaults(fn=_cmd_path)

    p = sub.add_parser("fuzz", help="seeded property-checking runs")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--deep", action="store_true", help="include subdivision and path checks")
    p.add_argument("--workers", type=int, default=None)
    common(p)
    p.set_defaults(fn=_cmd_fuzz)

    p = sub.add_parser("render", help="SVG figure of any combination of layers")
    p.add_argument("--curve", default=None)
    p.add_argument("--poly", default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--witness", default=None)
    p.add_argument("--separating", default=None)
    p.add_argument("--path", default=None)
    p.add_argument("--tau", type=float, default=1e-9)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_render)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except JordanKitError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
