"""Seeded fuzz harness running the full pipeline and its invariant checks.

Each case draws a random trigonometric-series curve (at most five
harmonics around a unit circle), rejection-sampled until the injectivity
gap at parameter distance 0.05 exceeds 0.05.  The case then samples,
simplifies, cross-checks against the brute-force oracles, and verifies the
band, witness, and separation properties; ``deep`` additionally runs the
interior subdivision, separating polygon, and path construction against the
grid oracle.  Violations are collected as findings, never raised, so one
bad case cannot hide another.

The seed fully determines a run: per-case generators are derived from
(seed, index), and reports are merged in index order, so worker count does
not affect the output bytes.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import oracle
from .connectivity import build_subdivision, connect, separating_polygon
from .curves import FourierCurve, band_radius, injectivity_gap, mesh, sample
from .errors import JordanKitError, NotSameFaceError
from .io import curve_to_dict
from .primitives import Tolerance
from .regions import RegionLabel, check_separation, classify, interior_witness
from .simplifier import simplify
from .topology import PointLocation, contains, distance_to_many


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 42
    cases: int = 100
    n: int = 256
    m: int = 16
    s: float = 0.05
    min_gap: float = 0.05
    gap_grid: int = 256
    tau: float = 1e-9
    fine_factor: int = 64
    deep: bool = False
    workers: int | None = None


def default_workers() -> int:
    env = os.environ.get("JORDAN_KIT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def random_curve(rng: np.random.Generator, max_harmonics: int = 5) -> FourierCurve:
    """Unit circle with random low-order harmonic perturbations."""
    k = int(rng.integers(2, max_harmonics + 1))
    decay = 1.0 / np.arange(1, k + 1) ** 2
    amp = 0.35
    coeffs = rng.normal(0.0, amp, size=(4, k)) * decay
    x_cos = coeffs[0].copy()
    x_sin = coeffs[1].copy()
    y_cos = coeffs[2].copy()
    y_sin = coeffs[3].copy()
    x_cos[0] += 1.0  # base circle
    y_sin[0] += 1.0
    center = rng.normal(0.0, 0.2, size=2)
    return FourierCurve(center[0], x_cos, x_sin, center[1], y_cos, y_sin)


def generate_case_curve(cfg: FuzzConfig, index: int, max_attempts: int = 200):
    """Rejection-sample a curve whose injectivity gap clears the floor."""
    rng = np.random.default_rng([cfg.seed, index])
    for attempt in range(1, max_attempts + 1):
        curve = random_curve(rng)
        gap = injectivity_gap(curve, cfg.s, cfg.gap_grid)
        if gap > cfg.min_gap:
            return curve, gap, attempt
    raise JordanKitError(f"case {index}: no injective curve after {max_attempts} draws")


def _finding(record, check, detail):
    record["findings"].append({"check": check, "detail": detail})


def run_case(cfg: FuzzConfig, index: int) -> dict:
    tau = Tolerance(cfg.tau)
    record: dict = {"index": index, "findings": []}
    try:
        curve, gap, attempts = generate_case_curve(cfg, index)
    except JordanKitError as exc:
        record["findings"].append({"check": "generate", "detail": str(exc)})
        return record
    record["curve"] = curve_to_dict(curve)
    record["gap"] = gap
    record["attempts"] = attempts
    rng = np.random.default_rng([cfg.seed, index, 1])

    # sampling + simplification with per-step invariants (raise -> finding)
    poly0 = sample(curve, cfg.n)
    record["mesh_in"] = mesh(poly0)
    try:
        simp = simplify(poly0, tau)
    except JordanKitError as exc:
        _finding(record, "simplify", str(exc))
        return record
    record["n_out"] = simp.poly.n
    record["mesh_out"] = mesh(simp.poly)
    if record["mesh_out"] > record["mesh_in"] + 1e-12:
        _finding(record, "mesh_monotone", f"{record['mesh_in']} -> {record['mesh_out']}")

    leftovers = oracle.naive_self_intersections(simp.poly, tau)
    record["oracle_clean"] = not leftovers
    if leftovers:
        _finding(record, "oracle_simple", f"{len(leftovers)} intersections remain")

    eps = band_radius(curve, simp.poly, cfg.m)
    record["eps"] = eps
    record["resolution_ok"] = eps < gap / 2.0

    # curve containment in the band around the simplified polygon
    fine_n = cfg.fine_factor * cfg.n
    ts = np.arange(fine_n, dtype=float) / fine_n
    pts = curve.points(ts)
    owner = np.clip(np.searchsorted(simp.poly.params, ts, side="right") - 1, 0, simp.poly.n - 1)
    a, b = simp.poly.side_arrays()
    sa, sb = a[owner], b[owner]
    d = sb - sa
    w = pts - sa
    tproj = np.clip(np.sum(w * d, axis=1) / np.sum(d * d, axis=1), 0.0, 1.0)
    off = w - tproj[:, None] * d
    local = np.hypot(off[:, 0], off[:, 1])
    suspect = np.flatnonzero(local > eps)
    if suspect.size:
        exact = distance_to_many(simp.poly, pts[suspect])
        bad = suspect[exact > eps * (1.0 + 1e-9)]
        if bad.size:
            _finding(record, "band_cover", f"{bad.size} fine samples beyond eps")
    spot = pts[cfg.fine_factor // 2 :: max(1, cfg.fine_factor)]  # mid-interval samples
    spot_d = distance_to_many(simp.poly, spot)
    record["band_spot_ratio"] = float(spot_d.max() / eps)
    if record["band_spot_ratio"] > 1.0 + 1e-9:
        _finding(record, "band_cover_spot", f"ratio {record['band_spot_ratio']}")

    # interior witness
    witness = None
    try:
        witness = interior_witness(simp, tau, eps=eps)
        record["clearance"] = witness.clearance
        recheck = min(
            float(distance_to_many(simp.poly, np.asarray([[witness.E.x, witness.E.y]]))[0]),
            witness.clearance,
        )
        if contains(simp, witness.E, tau) is not PointLocation.INSIDE:
            _finding(record, "witness_inside", "E not strictly inside")
        if record["resolution_ok"]:
            if not witness.clearance > eps:
                _finding(record, "witness_clearance", f"{witness.clearance} <= {eps}")
            if classify(simp, eps, witness.E, tau) is not RegionLabel.INTERIOR:
                _finding(record, "witness_classify", "E not Interior at band radius")
        if recheck <= 0:
            _finding(record, "witness_distance", "clearance not positive")
    except JordanKitError as exc:
        _finding(record, "witness", str(exc))

    # separation spot checks
    if witness is not None and record["resolution_ok"]:
        v = simp.poly.vertices
        lo = v.min(axis=0)
        hi = v.max(axis=0)
        span = hi - lo
        inner = np.asarray([witness.E.x, witness.E.y])
        hits = 0
        arcs = 0
        for _ in range(5):
            outer = hi + span * (0.2 + rng.random(2))
            mids = inner + (outer - inner) * np.sort(rng.random((3, 1)), axis=0) + rng.normal(
                0.0, 0.05 * float(span.max()), size=(3, 2)
            )
            arc = np.vstack([inner, mids, outer])
            if classify(simp, eps, outer, tau) is not RegionLabel.EXTERIOR:
                continue
            arcs += 1
            try:
                p = check_separation(simp, eps, arc, tau)
                d_bnd = float(distance_to_many(simp.poly, np.asarray([[p.x, p.y]]))[0])
                if d_bnd <= 1e-7 * (1.0 + float(np.abs(v).max())):
                    hits += 1
                else:
                    _finding(record, "separation_point", f"crossing {d_bnd} off boundary")
            except JordanKitError as exc:
                _finding(record, "separation", str(exc))
        record["separation_checked"] = arcs
        record["separation_found"] = hits

    # interior subdivision, separating polygon, path vs grid oracle
    if cfg.deep and witness is not None and record["resolution_ok"]:
        try:
            sub = build_subdivision(simp, eps, tau)
            record["n_special"] = len(sub.specials)
            sep = separating_polygon(
                simp, eps, witness.E, tau, curve_samples=pts[:: 4], subdivision=sub
            )
            record["separating_n"] = sep.polygon.poly.n
            inner = np.asarray([witness.E.x, witness.E.y])
            second = None
            for _ in range(32):
                cand = inner + rng.normal(0.0, 0.35 * witness.clearance, size=2)
                dc = float(distance_to_many(simp.poly, cand.reshape(1, 2))[0])
                if dc > 5.0 * eps and not (cand == inner).all():
                    second = cand
                    break
            if second is not None:
                if contains(sep.polygon, second, tau) is not PointLocation.INSIDE:
                    _finding(record, "separating_contains_b", "second point not inside")
                try:
                    path = connect(simp, eps, inner, second, tau, subdivision=sub)
                    record["path_points"] = int(len(path.points))
                    g = oracle.grid_path(simp, eps, inner, second, oracle.grid_for(simp, eps))
                    if g is None:
                        _finding(record, "grid_agreement", "grid oracle found no path")
                except NotSameFaceError as exc:
                    _finding(record, "not_same_face", str(exc))
                    if oracle.grid_path(simp, eps, inner, second, oracle.grid_for(simp, eps)):
                        _finding(record, "grid_agreement", "grid reaches, construction split")
        except JordanKitError as exc:
            _finding(record, "connectivity", str(exc))

    return record


def _run_case_tuple(args) -> dict:
    cfg_dict, index = args
    return run_case(FuzzConfig(**cfg_dict), index)


def run_fuzz(cfg: FuzzConfig) -> dict:
    workers = cfg.workers if cfg.workers is not None else default_workers()
    cfg_dict = asdict(cfg)
    if workers > 1 and cfg.cases > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, cfg.cases // (8 * workers))
            records = list(
                pool.map(_run_case_tuple, [(cfg_dict, k) for k in range(cfg.cases)], chunksize=chunk)
            )
    else:
        records = [run_case(cfg, k) for k in range(cfg.cases)]
    records.sort(key=lambda r: r["index"])
    findings = [
        {"case": r["index"], **f} for r in records for f in r["findings"]
    ]
    report = {
        "config": cfg_dict,
        "summary": {
            "cases": cfg.cases,
            "findings": len(findings),
            "resolution_failures": sum(1 for r in records if not r.get("resolution_ok", True)),
        },
        "findings": findings,
        "cases": records,
    }
    return report
