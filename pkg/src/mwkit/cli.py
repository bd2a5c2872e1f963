"""Command-line front end.

Exit codes: 0 success, 1 a certification clause failed, 2 usage error.
Data goes to ``--out`` (default stdout); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import time
from datetime import datetime, timezone
from typing import Any, Optional, Sequence

import numpy as np

from mwkit import __version__
from mwkit.analysis import (
    NODE_FOCUS_OMEGA,
    PITCHFORK_OMEGA,
    TOL_BIF,
    EquilibriumInfo,
    bifurcation_scan,
    interior_equilibrium,
    saddle_points,
)
from mwkit.errors import MWKitError
from mwkit.integrate import Direction, IntegrationConfig, integrate
from mwkit.model import CartesianState, Params, Scale, normalize
from mwkit.portrait import (
    Separatrix,
    certify_theorem1,
    classify_basin_grid,
    trace_separatrix,
)
from mwkit.svg import basin_svg, portrait_svg

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


# -- serialization -------------------------------------------------------------


def _clean(obj: Any) -> Any:
    """Convert numpy / dataclass / enum values into plain JSON types."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _clean(getattr(obj, f.name)) for f in dataclasses.fields(obj) if not f.name.startswith("_")}
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        return obj if math.isfinite(obj) else None
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def _num(v: Any) -> str:
    """Round-trip decimal text of a number (shortest repr that parses back bit-exactly)."""
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return repr(v) if math.isfinite(v) else ""
    return str(v)


def to_json(payload: dict) -> str:
    return json.dumps(_clean(payload), indent=2, allow_nan=False) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]], comments: Sequence[str]) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\r\n")
    w = csv.writer(buf)
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])
    return buf.getvalue()


# -- argument handling ---------------------------------------------------------


def _parse_tol(items: Optional[list[str]]) -> IntegrationConfig:
    cfg = IntegrationConfig()
    if not items:
        return cfg
    fields = {f.name: f.type for f in dataclasses.fields(IntegrationConfig)}
    kw = {}
    for item in items:
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in fields:
            raise UsageError(f"--tol expects KEY=VALUE with KEY in {sorted(fields)}, got {item!r}")
        try:
            kw[key] = int(val) if key == "max_steps" else float(val)
        except ValueError as exc:
            raise UsageError(f"bad value in --tol {item!r}") from exc
    return cfg.with_overrides(**kw)


def _floats(text: str, sep: str, n: Optional[int], what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(sep)]
    except ValueError as exc:
        raise UsageError(f"malformed {what}: {text!r}") from exc
    if n is not None and len(vals) != n:
        raise UsageError(f"{what} needs {n} values separated by {sep!r}, got {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"non-finite value in {what}")
    return vals


def _window(text: Optional[str], default: Sequence[float]) -> tuple[float, float, float, float]:
    if text is None:
        return tuple(default)
    xmin, xmax, ymin, ymax = _floats(text, ",", 4, "--window (xmin,xmax,ymin,ymax)")
    if xmin >= xmax or ymin >= ymax:
        raise UsageError(f"malformed --window {text!r}: need xmin < xmax and ymin < ymax")
    return xmin, xmax, ymin, ymax


def _resolution(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        vals = [int(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"malformed --res {text!r}") from exc
    if len(vals) == 1:
        vals = vals * 2
    if len(vals) != 2 or min(vals) < 2:
        raise UsageError(f"--res must be >= 2 (got {text!r})")
    return vals[0], vals[1]


def _params(args, omega: Optional[float] = None) -> Params:
    omega = args.omega if omega is None else omega
    if omega is None:
        raise UsageError("--omega is required")
    return Params(omega=omega, v=args.v, R=args.R)


def _manifest(args, cfg: IntegrationConfig, extra: Optional[dict] = None) -> dict:
    m = {
        "tool": "mwkit",
        "version": __version__,
        "command": args.command,
        "argv": list(args._argv),
        "params": {"omega": args.omega, "v": args.v, "R": args.R},
        "config": dataclasses.asdict(cfg),
    }
    if extra:
        m["params"].update(extra)
    if args.timing:
        m["wall_clock_s"] = time.perf_counter() - args._t0
    return m


def _manifest_comments(manifest: dict) -> list[str]:
    return [f"{k}: {json.dumps(_clean(v), separators=(',', ':'))}" for k, v in manifest.items()]


def _svg_comments(args, manifest: dict) -> list[str]:
    # "--" may not appear inside an XML comment; a JSON escape keeps it parseable
    out = [c.replace("--", "-\\u002d") for c in _manifest_comments(manifest)]
    if not args.no_timestamp:
        out.append(f"generated: {datetime.now(timezone.utc).isoformat(timespec='seconds')}")
        out.append(f"wall_clock_s: {time.perf_counter() - args._t0:.3f}")
    return out


def _fmt(args, default: str, allowed: Sequence[str]) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"{args.command} does not support --format {fmt} (choose from {', '.join(allowed)})")
    return fmt


# -- commands -----------------------------------------------------------------


def _eq_record(e: EquilibriumInfo, scale: Scale) -> dict:
    cart = e.position_cartesian
    rec = {
        "name": e.name,
        "class": e.cls.value,
        "theta": e.position_polar.theta,
        "r": e.position_polar.r,
        "x_normalized": cart.x if cart else None,
        "y_normalized": cart.y if cart else None,
        "x": scale.point(cart.x, cart.y)[0] if cart else None,
        "y": scale.point(cart.x, cart.y)[1] if cart else None,
        "sigma": e.sigma,
        "delta": e.delta,
        "discriminant": e.discriminant,
        "eigenvalues": [[lam.real, lam.imag] for lam in e.eigenvalues],
        "eigenvectors": [list(v) for v in e.eigenvectors] if e.eigenvectors is not None else None,
    }
    return rec


def cmd_equilibria(args) -> tuple[str, int]:
    fmt = _fmt(args, "json", ("json", "csv"))
    cfg = _parse_tol(args.tol)
    p = _params(args)
    npar, scale = normalize(p)
    w = npar.omega
    records: list[dict] = []
    if w > 0:
        records = [_eq_record(e, scale) for e in saddle_points(w)]
    info = interior_equilibrium(w)
    if info is not None:
        records.append(_eq_record(info, scale))
    if abs(w - PITCHFORK_OMEGA) <= TOL_BIF:
        regime = "DegenerateTransition:PitchforkAtOmega1"
    elif info is None:
        regime = "F global attractor (no interior equilibrium)"
    else:
        regime = "unique attracting interior equilibrium P"
    manifest = _manifest(args, cfg, {"omega_normalized": w})
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "manifest": manifest,
            "omega_normalized": w,
            "scale": {"length": scale.length, "time": scale.time},
            "regime": regime,
            "focus": {"x": p.R, "y": 0.0},
            "interior_equilibrium": None if info is None else {"x": records[-1]["x"], "y": records[-1]["y"]},
            "equilibria": records,
            "notes": [
                "theta, r, eigenvalues and eigenvectors refer to the polar chart centred at F with rescaled time",
                "S- and S+ sit at r = 0, i.e. both map to F in the plane",
            ],
        }
        return to_json(payload), 0
    header = [
        "name", "class", "theta", "r", "x", "y", "x_normalized", "y_normalized",
        "sigma", "delta", "discriminant", "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im",
    ]  # fmt: skip
    rows = [
        [rec["name"], rec["class"], rec["theta"], rec["r"], rec["x"], rec["y"], rec["x_normalized"], rec["y_normalized"],
         rec["sigma"], rec["delta"], rec["discriminant"], *rec["eigenvalues"][0], *rec["eigenvalues"][1]]
        for rec in records
    ]  # fmt: skip
    return to_csv(header, rows, _manifest_comments(manifest) + [f"regime: {regime}"]), 0


def _orbit_starts(window, n: int) -> list[tuple[float, float]]:
    xmin, xmax, ymin, ymax = window
    cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
    rad = 0.45 * min(xmax - xmin, ymax - ymin)
    return [(cx + rad * math.cos(2 * math.pi * k / n), cy + rad * math.sin(2 * math.pi * k / n)) for k in range(n)]


def cmd_portrait(args) -> tuple[str, int]:
    fmt = _fmt(args, "json", ("json", "svg"))
    cfg = _parse_tol(args.tol)
    p = _params(args)
    npar, scale = normalize(p)
    w = npar.omega
    if abs(w - PITCHFORK_OMEGA) <= TOL_BIF:
        raise UsageError(f"normalized omega {w} is the degenerate pitchfork value 1; portrait not drawn")
    window = _window(args.window, (-2 * p.R, 2 * p.R, -2 * p.R, 2 * p.R))
    if args.orbits < 0:
        raise UsageError("--orbits must be >= 0")
    norm_window = [v / p.R for v in window]
    seps: list[tuple[str, np.ndarray]] = []
    p_point = None
    info = interior_equilibrium(w)
    if info is not None:
        p_point = scale.point(info.position_cartesian.x, info.position_cartesian.y)
        reach = 1.5 * max(abs(v) for v in norm_window) + 1.0
        for which in (Separatrix.STABLE_OF_F, Separatrix.UNSTABLE_OF_F):
            tr = trace_separatrix(w, which, cfg, window_radius=reach)
            seps.append((which.value, tr.polyline * p.R))
    orbit_cfg = cfg.with_overrides(max_time=min(cfg.max_time, 60.0))
    orbits = []
    for sx, sy in _orbit_starts(norm_window, args.orbits):
        if math.hypot(1 - sx, sy) < 1e-9:
            continue
        tr = integrate(w, CartesianState(sx, sy), Direction.FORWARD, orbit_cfg)
        orbits.append(tr.points * p.R)
    manifest = _manifest(args, cfg, {"omega_normalized": w, "window": list(window), "orbits": args.orbits})
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "manifest": manifest,
            "focus": [p.R, 0.0],
            "P": list(p_point) if p_point else None,
            "separatrices": {name: pts for name, pts in seps},
            "orbits": orbits,
        }
        return to_json(payload), 0
    text = portrait_svg(
        window=window, R=p.R, p_point=p_point, separatrices=seps, orbits=orbits, comments=_svg_comments(args, manifest)
    )
    return text, 0


def cmd_basin(args) -> tuple[str, int]:
    fmt = _fmt(args, "json", ("json", "csv", "svg"))
    cfg = _parse_tol(args.tol)
    p = _params(args)
    npar, scale = normalize(p)
    window = _window(args.window, (-p.R, p.R, -p.R, p.R))
    res = _resolution(args.res)
    grid = classify_basin_grid(npar.omega, [v / p.R for v in window], res, cfg)
    X, Y = grid.centers()
    labels = grid.labels()
    manifest = _manifest(args, cfg, {"omega_normalized": npar.omega, "window": list(window), "resolution": list(res)})
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "manifest": manifest,
            "window": list(window),
            "resolution": list(res),
            "counts": grid.counts(),
            # row i is y-index i (bottom to top), column j is x-index j
            "cells": labels.tolist(),
        }
        return to_json(payload), 0
    if fmt == "csv":
        rows = [[X[i, j] * p.R, Y[i, j] * p.R, labels[i, j]] for i in range(res[1]) for j in range(res[0])]
        return to_csv(["x", "y", "class"], rows, _manifest_comments(manifest)), 0
    return basin_svg(window=window, resolution=res, labels=labels, R=p.R, comments=_svg_comments(args, manifest)), 0


def cmd_bifurcations(args) -> tuple[str, int]:
    fmt = _fmt(args, "json", ("json", "csv"))
    cfg = _parse_tol(args.tol)
    lo, hi = _floats(args.omega_range, ":", 2, "--omega-range (a:b)")
    if not (0 <= lo < hi):
        raise UsageError(f"--omega-range needs 0 <= a < b, got {args.omega_range!r}")
    if args.step <= 0:
        raise UsageError("--step must be positive")
    to_norm = args.R / args.v
    _params(args, omega=lo)  # validates v and R
    events = bifurcation_scan(lo * to_norm, hi * to_norm, step=args.step * to_norm)
    recs = [
        {
            "kind": e.kind,
            "omega_normalized": e.omega,
            "omega": e.omega / to_norm,
            "bracket_normalized": list(e.bracket),
            "signs": list(e.signs),
        }
        for e in events
    ]
    manifest = _manifest(args, cfg, {"omega_range": [lo, hi]})
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "manifest": manifest,
            "reference_values_normalized": {"Pitchfork": PITCHFORK_OMEGA, "NodeFocusTransition": NODE_FOCUS_OMEGA},
            "events": recs,
        }
        return to_json(payload), 0
    rows = [[r["kind"], r["omega"], r["omega_normalized"], *r["bracket_normalized"]] for r in recs]
    header = ["kind", "omega", "omega_normalized", "bracket_lo", "bracket_hi"]
    return to_csv(header, rows, _manifest_comments(manifest)), 0


def cmd_verify(args) -> tuple[str, int]:
    fmt = _fmt(args, "json", ("json", "csv"))
    cfg = _parse_tol(args.tol)
    omegas = _floats(args.omega_list, ",", None, "--omega-list")
    if not omegas:
        raise UsageError("--omega-list must not be empty")
    normalized = [normalize(_params(args, omega=w))[0].omega for w in omegas]
    if args.res < 2:
        raise UsageError("--res must be >= 2")
    report = certify_theorem1(normalized, cfg, resolution=args.res, n_invariance=args.samples)
    for note in report.notes:
        print(f"notice: {note}", file=sys.stderr)
    code = 0 if report.passed else 1
    manifest = _manifest(args, cfg, {"omega_list": omegas, "omega_list_normalized": normalized, "resolution": args.res})
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "manifest": manifest,
            "passed": report.passed,
            "notes": report.notes,
            "clauses": report.clauses,
        }
        return to_json(payload), code
    rows = [
        [c.omega, c.clause, c.verdict.value, c.samples, c.worst_margin, len(c.witnesses)] for c in report.clauses
    ]
    header = ["omega_normalized", "clause", "verdict", "samples", "worst_margin", "witnesses"]
    return to_csv(header, rows, _manifest_comments(manifest)), code


def cmd_trajectory(args) -> tuple[str, int]:
    fmt = _fmt(args, "json", ("json", "csv"))
    cfg = _parse_tol(args.tol)
    p = _params(args)
    npar, scale = normalize(p)
    sx, sy = _floats(args.start, ",", 2, "--start (x,y)")
    stride = None if args.stride is None else args.stride / scale.time
    tr = integrate(npar.omega, CartesianState(sx / p.R, sy / p.R), Direction(args.direction), cfg, sample_stride=stride)
    t = tr.t * scale.time
    pts = tr.points * scale.length
    term = {"kind": tr.termination.kind.value, "t": scale.duration(tr.termination.t)}
    manifest = _manifest(args, cfg, {"omega_normalized": npar.omega, "start": [sx, sy], "direction": args.direction})
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "manifest": manifest,
            "termination": term,
            "samples": {"t": t, "x": pts[:, 0], "y": pts[:, 1]},
        }
        return to_json(payload), 0
    rows = [[a, b, c] for a, (b, c) in zip(t, pts)]
    return to_csv(["t", "x", "y"], rows, _manifest_comments(manifest) + [f"termination: {json.dumps(_clean(term))}"]), 0


def cmd_replay(args) -> tuple[str, int]:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    argv = None
    if text.lstrip().startswith("{"):
        argv = json.loads(text).get("manifest", {}).get("argv")
    else:
        for line in text.splitlines():
            if line.startswith("# argv: ") or line.startswith("<!-- argv: "):
                argv = json.loads(line.split(": ", 1)[1].removesuffix(" -->"))
                break
    if not argv:
        raise UsageError(f"{args.file} carries no replayable manifest")
    sub = build_parser().parse_args(argv)
    sub._argv = argv
    sub._t0 = time.perf_counter()
    return COMMANDS[sub.command](sub)


COMMANDS = {
    "equilibria": cmd_equilibria,
    "portrait": cmd_portrait,
    "basin": cmd_basin,
    "bifurcations": cmd_bifurcations,
    "verify": cmd_verify,
    "trajectory": cmd_trajectory,
    "replay": cmd_replay,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega", type=float, default=None, help="angular velocity of the medium")
    common.add_argument("--v", type=float, default=1.0, help="swimming speed (default 1)")
    common.add_argument("--R", type=float, default=1.0, help="focal distance (default 1)")
    common.add_argument("--format", choices=("json", "csv", "svg"), default=None)
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("--tol", action="append", metavar="KEY=VALUE", help="integration config override, repeatable")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp comment in SVG output")
    common.add_argument("--timing", action="store_true", help="record wall-clock duration in the manifest")

    ap = argparse.ArgumentParser(prog="mwkit", description="Markus-Wilson kinematic model toolkit")
    ap.add_argument("--version", action="version", version=f"mwkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("equilibria", parents=[common], help="list equilibria and their classification")

    sp = sub.add_parser("portrait", parents=[common], help="phase portrait (SVG)")
    sp.add_argument("--window", help="xmin,xmax,ymin,ymax in original units")
    sp.add_argument("--orbits", type=int, default=12, help="number of sample orbits")

    sp = sub.add_parser("basin", parents=[common], help="basin classification grid")
    sp.add_argument("--window", help="xmin,xmax,ymin,ymax in original units")
    sp.add_argument("--res", default="50", help="N or NXxNY cells")

    sp = sub.add_parser("bifurcations", parents=[common], help="scan omega for bifurcations")
    sp.add_argument("--omega-range", required=True, help="a:b in original units")
    sp.add_argument("--step", type=float, default=1e-2, help="scan step in original units")

    sp = sub.add_parser("verify", parents=[common], help="certify the attraction theorem for several omegas")
    sp.add_argument("--omega-list", required=True, help="comma separated omegas in original units")
    sp.add_argument("--res", type=int, default=100, help="basin grid resolution per side")
    sp.add_argument("--samples", type=int, default=10_000, help="quasi-random samples for the invariance clause")

    sp = sub.add_parser("trajectory", parents=[common], help="integrate one orbit")
    sp.add_argument("--start", required=True, help="x,y in original units")
    sp.add_argument("--direction", choices=("forward", "backward"), default="forward")
    sp.add_argument("--stride", type=float, default=None, help="dense sample stride in original time units")

    sp = sub.add_parser("replay", help="re-run the command recorded in a json/csv/svg output")
    sp.add_argument("file")
    sp.add_argument("--out", default="-")
    return ap


def _strip_out(argv: Sequence[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--out":
            skip = True
            continue
        if a.startswith("--out=") or a in ("--no-timestamp", "--timing"):
            continue
        out.append(a)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args._argv = _strip_out(argv)
    args._t0 = time.perf_counter()
    for name, default in (("timing", False), ("no_timestamp", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, MWKitError) as exc:
        print(f"mwkit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
