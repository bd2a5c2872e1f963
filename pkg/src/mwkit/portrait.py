"""Global objects of the phase portrait and the numerical certification of the attraction theorem.

The separatrices of F are generated by the chart saddles S- and S+ (both at
r = 0, i.e. at F itself), so they are seeded and integrated in the polar
chart and mapped to the plane afterwards.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from mwkit import _rk
from mwkit.analysis import (
    PITCHFORK_OMEGA,
    TOL_BIF,
    EquilibriumClass,
    interior_equilibrium,
    refine_equilibrium,
    saddle_points,
    separatrix_and_border_slopes,
)
from mwkit.errors import InvalidParameters, NoSaddle
from mwkit.integrate import (
    Direction,
    IntegrationConfig,
    Outcome,
    PolarTrajectory,
    integrate_many,
    integrate_polar,
)
from mwkit.model import FOCUS_EPS, PolarState, cartesian_rhs, polar_to_xy, radial_derivative

CONTAINMENT_TOL = 1e-6
SADDLE_ARC_GUARD = 1e-3
TRACE_WINDOW = 10.0
TRACE_MAX_ARC = 50.0
MAX_GAP = 1e-2


class Separatrix(str, Enum):
    STABLE_OF_F = "StableOfF"  # W^s(F), born at S-
    UNSTABLE_OF_F = "UnstableOfF"  # W^u(F), born at S+


class Verdict(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NOT_APPLICABLE = "NotApplicable"
    NOT_ASSERTED = "NotAsserted"


def max_threads() -> int:
    """Worker count from ``MWKIT_MAX_THREADS`` (0 or unset = one per CPU)."""
    raw = os.environ.get("MWKIT_MAX_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


# -- separatrices -------------------------------------------------------------


@dataclass
class ContainmentReport:
    """Per-sample margins of a trace relative to the borders of G and C.

    ``c_margin = r - cos(theta)`` (>= 0 outside C), ``g_margin = 2 cos(theta) - r``
    (>= 0 inside G), ``z = x**2 + y**2``.  ``guarded`` marks samples within
    the saddle-adjacent arc where all three curves meet.
    """

    c_margin: np.ndarray
    g_margin: np.ndarray
    z: np.ndarray
    guarded: np.ndarray


@dataclass
class SeparatrixTrace:
    which: Separatrix
    omega: float
    polyline: np.ndarray  # (n, 2) cartesian, r > 0 branch
    polar: np.ndarray  # (n, 2) columns theta, r
    arc: np.ndarray  # cartesian arc length from the seed
    seed: dict
    stop: str
    containment_report: ContainmentReport

    def initial_slope(self, chart_arc: float = 1e-3) -> float:
        """dr/dtheta of the chord over the first ``chart_arc`` of (theta, r) arc length."""
        d = np.hypot(np.diff(self.polar[:, 0]), np.diff(self.polar[:, 1]))
        s = np.concatenate([[0.0], np.cumsum(d)])
        k = int(np.searchsorted(s, chart_arc))
        k = min(max(k, 1), len(s) - 1)
        dth = self.polar[k, 0] - self.polar[0, 0]
        dr = self.polar[k, 1] - self.polar[0, 1]
        return float(dr / dth)


def _seed(omega: float, which: Separatrix, tol_bif: float) -> tuple[PolarState, np.ndarray, Direction, str]:
    s_minus, s_plus = saddle_points(omega, tol_bif)
    if which is Separatrix.UNSTABLE_OF_F:
        saddle, lam, direction = s_plus, omega - 1.0, Direction.FORWARD
    else:
        saddle, lam, direction = s_minus, -(omega + 1.0), Direction.BACKWARD
    v = saddle.eigenvector_for(lam)
    if v[1] < 0:
        v = -v
    return saddle.position_polar, v, direction, saddle.name


def _resample(traj: PolarTrajectory, max_gap: float) -> tuple[np.ndarray, np.ndarray]:
    """Dense-output samples (theta, r, arc) with cartesian gaps below ``max_gap``."""
    rows = [np.array([traj.theta[0], traj.r[0], traj.arc[0]])]
    for j in range(traj._seg_h.size):
        y0, h, Q, frac = traj._seg_y0[j], traj._seg_h[j], traj._seg_Q[j], traj._seg_frac[j]
        end = _rk.dense_eval(y0, h, Q, frac)
        n = max(1, int(math.ceil((end[3] - y0[3]) / (0.5 * max_gap))))
        fr = np.linspace(0.0, frac, n + 1)[1:]
        pts = _rk.dense_eval(y0, h, Q, fr)
        xy = np.column_stack(polar_to_xy(pts[:, 0], pts[:, 1]))
        prev = np.array(polar_to_xy(rows[-1][0], rows[-1][1]))
        gaps = np.hypot(*(np.diff(np.vstack([prev, xy]), axis=0).T))
        if gaps.max() > max_gap:
            fr = np.linspace(0.0, frac, 4 * n + 1)[1:]
            pts = _rk.dense_eval(y0, h, Q, fr)
        rows.extend(pts[:, [0, 1, 3]])
    arr = np.array(rows)
    return arr[:, :2], arr[:, 2]


def trace_separatrix(
    omega: float,
    which: Separatrix | str,
    cfg: Optional[IntegrationConfig] = None,
    *,
    offset: float = 1e-6,
    window_radius: float = TRACE_WINDOW,
    max_arc: float = TRACE_MAX_ARC,
    max_gap: float = MAX_GAP,
    tol_bif: float = TOL_BIF,
) -> SeparatrixTrace:
    """Trace W^u(F) (from S+) or W^s(F) (from S-, backward) for omega > 1."""
    which = Separatrix(which)
    cfg = cfg or IntegrationConfig()
    if omega <= PITCHFORK_OMEGA + tol_bif:
        raise NoSaddle(f"S+ is not a saddle for omega = {omega}; no separatrices of F")
    base, v, direction, name = _seed(omega, which, tol_bif)
    start = PolarState(base.theta + offset * v[0], base.r + offset * v[1])
    # slow escape from the saddle: rate omega - 1 for W^u
    rate = (omega - 1.0) if which is Separatrix.UNSTABLE_OF_F else (omega + 1.0)
    need = 50.0 + 3.0 * math.log(1.0 / offset) / rate
    run_cfg = cfg.with_overrides(max_rescaled_time=max(cfg.max_rescaled_time, need))
    traj = integrate_polar(
        omega, start, direction, run_cfg, max_arc=max_arc, window_radius=window_radius
    )
    polar, arc = _resample(traj, max_gap)
    x, y = polar_to_xy(polar[:, 0], polar[:, 1])
    polyline = np.column_stack([x, y])
    c = np.cos(polar[:, 0])
    report = ContainmentReport(
        c_margin=polar[:, 1] - c,
        g_margin=2.0 * c - polar[:, 1],
        z=x * x + y * y,
        guarded=arc < SADDLE_ARC_GUARD,
    )
    stop = traj.termination.kind.value
    if traj.termination.kind is Outcome.LEFT_WINDOW and traj.arc is not None and traj.arc[-1] >= max_arc:
        stop = "MaxArcLength"
    return SeparatrixTrace(
        which=which,
        omega=float(omega),
        polyline=polyline,
        polar=polar,
        arc=arc,
        seed={"saddle": name, "offset": offset, "direction": [float(v[0]), float(v[1])]},
        stop=stop,
        containment_report=report,
    )


# -- basin grids --------------------------------------------------------------

BASIN_CLASSES = ("Excluded",) + tuple(o.value for o in Outcome)


@dataclass
class BasinGrid:
    omega: float
    window: tuple[float, float, float, float]  # xmin, xmax, ymin, ymax
    resolution: tuple[int, int]  # nx, ny
    cells: np.ndarray  # (ny, nx) indices into BASIN_CLASSES

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        return cell_centers(self.window, self.resolution)

    def counts(self) -> dict[str, int]:
        return {name: int(np.count_nonzero(self.cells == k)) for k, name in enumerate(BASIN_CLASSES)}

    def fraction(self, outcome: Outcome) -> float:
        live = self.cells != 0
        return float(np.count_nonzero(self.cells == BASIN_CLASSES.index(outcome.value)) / max(live.sum(), 1))

    def labels(self) -> np.ndarray:
        return np.array(BASIN_CLASSES, dtype=object)[self.cells]


def cell_centers(window, resolution) -> tuple[np.ndarray, np.ndarray]:
    xmin, xmax, ymin, ymax = window
    nx, ny = resolution
    xs = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
    ys = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
    return np.meshgrid(xs, ys)


def _check_window(window, resolution) -> tuple[tuple[float, ...], tuple[int, int]]:
    if len(window) != 4:
        raise InvalidParameters("window must be (xmin, xmax, ymin, ymax)")
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    if not all(math.isfinite(v) for v in (xmin, xmax, ymin, ymax)) or xmin >= xmax or ymin >= ymax:
        raise InvalidParameters(f"malformed window {window}")
    if isinstance(resolution, int):
        resolution = (resolution, resolution)
    nx, ny = (int(v) for v in resolution)
    if nx < 2 or ny < 2:
        raise InvalidParameters(f"resolution must be at least 2x2, got {nx}x{ny}")
    return (xmin, xmax, ymin, ymax), (nx, ny)


def classify_basin_grid(
    omega: float,
    window: Sequence[float],
    resolution,
    cfg: Optional[IntegrationConfig] = None,
    *,
    order: Optional[np.ndarray] = None,
    chunk: int = 2500,
) -> BasinGrid:
    """Integrate every cell centre forward and record how it terminates.

    Cells within ``eps_F`` of F are marked Excluded.  ``order`` permutes the
    evaluation order of the flattened cells (results do not depend on it).
    """
    cfg = cfg or IntegrationConfig()
    window, resolution = _check_window(window, resolution)
    X, Y = cell_centers(window, resolution)
    pts = np.column_stack([X.ravel(), Y.ravel()])
    n = pts.shape[0]
    codes = np.zeros(n, dtype=np.int8)
    live = np.hypot(1.0 - pts[:, 0], pts[:, 1]) > max(cfg.eps_F, FOCUS_EPS)
    idx = np.flatnonzero(live)
    if order is not None:
        order = np.asarray(order)
        if sorted(order.tolist()) != list(range(n)):
            raise InvalidParameters("order must be a permutation of the cell indices")
        idx = order[live[order]]
    # each cell is an independent lane; chunks only bound memory and feed threads
    chunks = [idx[i : i + chunk] for i in range(0, idx.size, chunk)]

    def run(sel: np.ndarray) -> tuple[np.ndarray, list]:
        return sel, integrate_many(omega, pts[sel], Direction.FORWARD, cfg).kinds

    workers = min(max_threads(), max(len(chunks), 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]
    for sel, kinds in results:
        for i, kind in zip(sel, kinds):
            kind = kind or Outcome.MAX_TIME_EXCEEDED
            codes[i] = BASIN_CLASSES.index(kind.value)
    return BasinGrid(float(omega), window, resolution, codes.reshape(resolution[1], resolution[0]))


def near_curve(grid: BasinGrid, polyline: np.ndarray, cells: float = 2.0) -> np.ndarray:
    """Mask of grid cells whose centre lies within ``cells`` cell diagonals of a polyline."""
    X, Y = grid.centers()
    xmin, xmax, ymin, ymax = grid.window
    nx, ny = grid.resolution
    diag = math.hypot((xmax - xmin) / nx, (ymax - ymin) / ny)
    dist, _ = cKDTree(polyline).query(np.column_stack([X.ravel(), Y.ravel()]))
    # polyline samples are at most MAX_GAP apart, so point distance overestimates by <= MAX_GAP / 2
    return (dist - 0.5 * MAX_GAP <= cells * diag).reshape(X.shape)


def g_window(scale: float = 1.0) -> tuple[float, float, float, float]:
    """Bounding box of the disk G (radius 1), optionally enlarged."""
    return (-scale, scale, -scale, scale)


# -- invariance of G ----------------------------------------------------------


@dataclass
class InvarianceReport:
    omega: float
    n_samples: int
    n_border_samples: int
    worst_margin: float  # largest z' found outside C (must be < 0)
    worst_border_flux: float  # largest outward flux on the border of G (must be < 0)
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses


def verify_invariance(
    omega: float, n_samples: int, *, r_max: float = 10.0, seed: int = 0, max_witnesses: int = 20
) -> InvarianceReport:
    """Sample z' outside the closed disk C and the flux through the border of G.

    Outside C (r > cos(theta), r > 0) the derivative of ``x**2 + y**2`` must
    be strictly negative; it is evaluated both from the closed form and from
    the cartesian field, and either being >= 0 is a witness.
    """
    if n_samples < 1:
        raise InvalidParameters("n_samples must be >= 1")
    halton = qmc.Halton(d=2, scramble=True, seed=seed)
    u = halton.random(n_samples)
    theta = -math.pi + 2.0 * math.pi * u[:, 0]
    r_lo = np.maximum(np.cos(theta), 0.0)
    r = r_lo + (r_max - r_lo) * u[:, 1]
    keep = (r > r_lo) & (r > 1e-12)
    theta, r = theta[keep], r[keep]
    zp_formula = np.array([radial_derivative(PolarState(a, b)) for a, b in zip(theta, r)])
    x, y = polar_to_xy(theta, r)
    fx, fy = cartesian_rhs(omega, x, y)
    # d/dtau z = r * d/dt z
    zp_field = 2.0 * r * (x * fx + y * fy)
    zp = np.maximum(zp_formula, zp_field)
    witnesses = [
        {"kind": "outside_C", "theta": float(a), "r": float(b), "z_prime": float(c)}
        for a, b, c in zip(theta[zp >= 0], r[zp >= 0], zp[zp >= 0])
    ][:max_witnesses]

    n_border = max(1, n_samples // 10)
    ub = qmc.Halton(d=1, scramble=True, seed=seed + 1).random(n_border)[:, 0]
    tb = -math.pi / 2 + math.pi * ub
    tb = tb[np.abs(np.abs(tb) - math.pi / 2) > 1e-9]
    bx, by = polar_to_xy(tb, 2.0 * np.cos(tb))
    gx, gy = cartesian_rhs(omega, bx, by)
    flux = bx * gx + by * gy
    witnesses += [
        {"kind": "border_G", "theta": float(a), "flux": float(f)} for a, f in zip(tb[flux >= 0], flux[flux >= 0])
    ][:max_witnesses]
    return InvarianceReport(
        omega=float(omega),
        n_samples=int(theta.size),
        n_border_samples=int(tb.size),
        worst_margin=float(zp.max()) if zp.size else float("nan"),
        worst_border_flux=float(flux.max()) if flux.size else float("nan"),
        witnesses=witnesses,
    )


# -- certification of the attraction theorem ---------------------------------


@dataclass
class ClauseResult:
    clause: str
    omega: float
    verdict: Verdict
    samples: int = 0
    worst_margin: Optional[float] = None
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


@dataclass
class TheoremReport:
    clauses: list[ClauseResult]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict is not Verdict.FAIL for c in self.clauses)

    def verdicts(self, omega: float) -> dict[str, Verdict]:
        return {c.clause: c.verdict for c in self.clauses if c.omega == omega}


def _verdict(witnesses: list) -> Verdict:
    return Verdict.PASS if not witnesses else Verdict.FAIL


def _grid_witnesses(grid: BasinGrid, expected: Outcome, limit: int = 20) -> list:
    X, Y = grid.centers()
    bad = (grid.cells != 0) & (grid.cells != BASIN_CLASSES.index(expected.value))
    labels = grid.labels()
    return [
        {"x": float(X[i, j]), "y": float(Y[i, j]), "class": str(labels[i, j])}
        for i, j in zip(*np.nonzero(bad))
    ][:limit]


def _plane_equilibria(omega: float, n_seeds: int = 15) -> list[PolarState]:
    """Distinct equilibria with r > 0 found by Newton from a seed grid."""
    found: list[PolarState] = []
    for th in np.linspace(-math.pi / 2, math.pi / 2, n_seeds + 2)[1:-1]:
        for r in np.linspace(0.05, 2.0, n_seeds):
            q = refine_equilibrium(omega, PolarState(float(th), float(r)))
            if q is None or q.r <= 1e-9:
                continue
            th_q = math.atan2(math.sin(q.theta), math.cos(q.theta))
            if not any(abs(th_q - p.theta) < 1e-7 and abs(q.r - p.r) < 1e-7 for p in found):
                found.append(PolarState(th_q, q.r))
    return found


def _item1(omega: float, cfg: IntegrationConfig, resolution: int) -> ClauseResult:
    witnesses, samples, details = [], 0, {}
    for scale in (1.0, 5.0):
        grid = classify_basin_grid(omega, g_window(scale), resolution, cfg)
        samples += int(np.count_nonzero(grid.cells))
        details[f"window_x{scale:g}"] = {
            "window": list(grid.window),
            "fraction_reached_F": grid.fraction(Outcome.REACHED_F),
            "counts": grid.counts(),
        }
        witnesses += _grid_witnesses(grid, Outcome.REACHED_F)
    return ClauseResult("item1_global_attraction", omega, _verdict(witnesses), samples, None, witnesses, details)


def _item2(omega: float, cfg: IntegrationConfig, tol_bif: float) -> ClauseResult:
    witnesses, details = [], {}
    p = interior_equilibrium(omega, tol_bif)
    hyperbolic_attracting = p is not None and p.sigma < 0 and p.delta > 0
    if not hyperbolic_attracting:
        witnesses.append({"kind": "P_not_attracting"})
    else:
        details["P"] = [p.position_cartesian.x, p.position_cartesian.y]
        details["P_class"] = p.cls.value
        eq = _plane_equilibria(omega)
        details["plane_equilibria_found"] = len(eq)
        if len(eq) != 1 or abs(eq[0].theta - p.position_polar.theta) > 1e-7 or abs(eq[0].r - p.position_polar.r) > 1e-7:
            witnesses.append({"kind": "uniqueness", "found": [[q.theta, q.r] for q in eq]})

    trace = trace_separatrix(omega, Separatrix.UNSTABLE_OF_F, cfg, tol_bif=tol_bif)
    rep = trace.containment_report
    checked = ~rep.guarded
    g_bad = checked & ((rep.g_margin < -CONTAINMENT_TOL) | (rep.z > 1.0 + CONTAINMENT_TOL))
    for k in np.flatnonzero(g_bad)[:20]:
        witnesses.append({"kind": "Wu_outside_G", "x": float(trace.polyline[k, 0]), "y": float(trace.polyline[k, 1])})
    # basin inclusion: the whole W^u(F) trace is captured by P
    outcome = integrate_many(omega, trace.polyline[checked], Direction.FORWARD, cfg)
    captured = np.array([k is Outcome.CONVERGED_TO_P for k in outcome.kinds])
    for k in np.flatnonzero(~captured)[:20]:
        pt = trace.polyline[checked][k]
        kind = outcome.kinds[k]
        witnesses.append({"kind": "Wu_not_in_Ws(P)", "x": float(pt[0]), "y": float(pt[1]), "class": kind.value if kind else "NonFinite"})
    # the sharper annulus location between G and C near S+ is a slope comparison
    slopes = separatrix_and_border_slopes(omega, tol_bif)
    measured = trace.initial_slope()
    if not (slopes.g_border_at_s_plus < measured < slopes.c_border_at_s_plus):
        witnesses.append({"kind": "Wu_slope_not_between_G_and_C", "slope": measured})
    details.update(
        {
            "trace_stop": trace.stop,
            "trace_points": int(trace.polyline.shape[0]),
            "initial_slope": measured,
            "expected_slope": slopes.unstable_at_s_plus,
            # informative only: W^u(F) ends at P, which lies on the border of C
            "min_c_margin": float(rep.c_margin[checked].min()),
        }
    )
    worst = float(rep.g_margin[checked].min()) if checked.any() else None
    return ClauseResult("item2_attracting_P", omega, _verdict(witnesses), int(checked.sum()), worst, witnesses, details)


def _item3(omega: float, cfg: IntegrationConfig, resolution: int, tol_bif: float) -> ClauseResult:
    witnesses, details = [], {}
    trace = trace_separatrix(omega, Separatrix.STABLE_OF_F, cfg, tol_bif=tol_bif)
    rep = trace.containment_report
    checked = ~rep.guarded
    bad = checked & (rep.z < 1.0 - CONTAINMENT_TOL)
    for k in np.flatnonzero(bad)[:20]:
        witnesses.append({"kind": "Ws_meets_G", "x": float(trace.polyline[k, 0]), "y": float(trace.polyline[k, 1])})
    slopes = separatrix_and_border_slopes(omega, tol_bif)
    measured = trace.initial_slope()
    if not measured > slopes.g_border_at_s_minus:
        witnesses.append({"kind": "Ws_slope_not_outside_G", "slope": measured})
    grid = classify_basin_grid(omega, g_window(1.0), resolution, cfg)
    X, Y = grid.centers()
    in_g = X * X + Y * Y <= 1.0
    # inside G every orbit is captured by P; outside G only W^s(F) may escape P
    near = near_curve(grid, trace.polyline, cells=2.0)
    conv = grid.cells == BASIN_CLASSES.index(Outcome.CONVERGED_TO_P.value)
    reached = grid.cells == BASIN_CLASSES.index(Outcome.REACHED_F.value)
    bad = (grid.cells != 0) & ~conv & (in_g | ~(reached & near))
    labels = grid.labels()
    witnesses += [
        {"x": float(X[i, j]), "y": float(Y[i, j]), "class": str(labels[i, j])} for i, j in zip(*np.nonzero(bad))
    ][:20]
    details.update(
        {
            "trace_stop": trace.stop,
            "trace_points": int(trace.polyline.shape[0]),
            "initial_slope": measured,
            "expected_slope": slopes.stable_at_s_minus,
            "grid_counts": grid.counts(),
            "fraction_converged_to_P": grid.fraction(Outcome.CONVERGED_TO_P),
            "fraction_converged_to_P_inside_G": float(conv[in_g & (grid.cells != 0)].mean()),
            "cells_on_Ws_F": int(np.count_nonzero(reached & near & ~in_g)),
        }
    )
    worst = float((rep.z[checked] - 1.0).min()) if checked.any() else None
    samples = int(checked.sum() + np.count_nonzero(grid.cells))
    return ClauseResult("item3_basin_dichotomy", omega, _verdict(witnesses), samples, worst, witnesses, details)


def certify_theorem1(
    omegas: Iterable[float],
    cfg: Optional[IntegrationConfig] = None,
    *,
    resolution: int = 100,
    n_invariance: int = 10_000,
    tol_bif: float = TOL_BIF,
) -> TheoremReport:
    """Per-omega verdicts for the invariance clause and items 1-3 of the attraction theorem.

    Item 1: F attracts every orbit for omega < 1.  Item 2: for omega > 1 P is
    the unique, hyperbolic, attracting equilibrium and W^u(F) lies in G.
    Item 3: G is captured by P and W^s(F) stays outside G.
    """
    cfg = cfg or IntegrationConfig()
    clauses: list[ClauseResult] = []
    notes: list[str] = []
    for omega in omegas:
        omega = float(omega)
        if not math.isfinite(omega) or omega < 0:
            raise InvalidParameters(f"normalized omega must be finite and >= 0, got {omega}")
        names = ("invariance", "item1_global_attraction", "item2_attracting_P", "item3_basin_dichotomy")
        if abs(omega - PITCHFORK_OMEGA) <= tol_bif:
            notes.append(f"omega={omega!r}: {EquilibriumClass.DEGENERATE_PITCHFORK.value}; no clause asserted")
            clauses += [ClauseResult(n, omega, Verdict.NOT_ASSERTED) for n in names]
            continue
        inv = verify_invariance(omega, n_invariance)
        clauses.append(
            ClauseResult(
                "invariance",
                omega,
                _verdict(inv.witnesses),
                inv.n_samples + inv.n_border_samples,
                inv.worst_margin,
                inv.witnesses,
                {"worst_border_flux": inv.worst_border_flux},
            )
        )
        if omega < PITCHFORK_OMEGA:
            clauses.append(_item1(omega, cfg, resolution))
            clauses.append(ClauseResult("item2_attracting_P", omega, Verdict.NOT_APPLICABLE))
            clauses.append(ClauseResult("item3_basin_dichotomy", omega, Verdict.NOT_APPLICABLE))
        else:
            clauses.append(ClauseResult("item1_global_attraction", omega, Verdict.NOT_APPLICABLE))
            clauses.append(_item2(omega, cfg, tol_bif))
            clauses.append(_item3(omega, cfg, resolution, tol_bif))
    return TheoremReport(clauses, notes)
