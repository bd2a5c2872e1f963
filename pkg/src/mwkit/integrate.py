"""Adaptive integration of the model with the three physical terminations.

Away from F the cartesian field is integrated in physical time.  Within
``chart_switch_radius`` of F a lane switches to the polar chart, where the
field is polynomial and the independent variable is the rescaled time tau;
physical time is then carried along as an extra state component obeying
``dt/dtau = r``, so it is integrated with the same order as the orbit.

Terminations:

* ``ReachedF`` -- the orbit came within ``eps_F`` of F.  Arrival at F takes
  finite physical time; the residual time for the last ``eps_F`` is added
  from the local radial speed ``1 - omega sin(theta)``.
* ``ConvergedToP`` -- forward orbit within ``eps_P`` of the attracting P.
* ``LeftWindow`` -- distance to the origin exceeded ``window_radius``.
* ``MaxTimeExceeded`` -- ``|t|`` reached ``max_time`` (the state is then
  exactly at ``max_time``) or a step / rescaled-time budget ran out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from mwkit import _rk
from mwkit.analysis import EquilibriumClass, Linearization, classify_linearization, interior_equilibrium
from mwkit.errors import InvalidParameters, NonFiniteState, OutOfSpan, StartAtFocus
from mwkit.model import (
    FOCUS_EPS,
    CartesianState,
    PolarState,
    cartesian_rhs,
    polar_rhs,
    polar_to_xy,
    xy_to_polar,
)


@dataclass(frozen=True)
class IntegrationConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_step: float = 0.1
    max_time: float = 1e3
    eps_F: float = 1e-8
    eps_P: float = 1e-6
    chart_switch_radius: float = 1e-2
    window_radius: float = 1e3
    max_rescaled_time: float = 2e3
    max_steps: int = 500_000

    def __post_init__(self) -> None:
        positive = (
            "rel_tol",
            "abs_tol",
            "max_step",
            "max_time",
            "eps_F",
            "eps_P",
            "chart_switch_radius",
            "window_radius",
            "max_rescaled_time",
            "max_steps",
        )
        for name in positive:
            val = getattr(self, name)
            if not (val > 0 and math.isfinite(val)):
                raise InvalidParameters(f"{name} must be a positive finite number, got {val!r}")
        if self.eps_F >= self.chart_switch_radius:
            raise InvalidParameters("eps_F must be smaller than chart_switch_radius")

    def with_overrides(self, **kw) -> "IntegrationConfig":
        return replace(self, **kw)


class Outcome(str, Enum):
    REACHED_F = "ReachedF"
    CONVERGED_TO_P = "ConvergedToP"
    LEFT_WINDOW = "LeftWindow"
    MAX_TIME_EXCEEDED = "MaxTimeExceeded"


_OUTCOMES = list(Outcome)
_NONFINITE = -1
_ACTIVE = -2


@dataclass(frozen=True)
class Termination:
    kind: Outcome
    t: Optional[float] = None  # physical time of termination

    def __str__(self) -> str:
        if self.t is None:
            return self.kind.value
        return f"{self.kind.value}(t={self.t:.10g})"


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.FORWARD else -1.0


DirectionLike = Union[Direction, str]


def _direction(d: DirectionLike) -> Direction:
    return d if isinstance(d, Direction) else Direction(d)


@dataclass
class Trajectory:
    """Samples ``(t, x, y)`` of an orbit in the cartesian chart."""

    t: np.ndarray
    points: np.ndarray
    termination: Termination
    direction: Direction = Direction.FORWARD

    @property
    def samples(self) -> list[tuple[float, CartesianState]]:
        return [(float(t), CartesianState(float(p[0]), float(p[1]))) for t, p in zip(self.t, self.points)]

    @property
    def end(self) -> CartesianState:
        return CartesianState(float(self.points[-1, 0]), float(self.points[-1, 1]))


@dataclass
class PolarTrajectory:
    """Samples in the (theta, r) chart with rescaled time ``tau`` and physical time ``t``."""

    tau: np.ndarray
    t: np.ndarray
    theta: np.ndarray
    r: np.ndarray
    termination: Termination
    direction: Direction = Direction.FORWARD
    arc: Optional[np.ndarray] = None
    # per accepted step: start tau, signed step, start state, dense matrix
    _seg_tau0: np.ndarray = field(default_factory=lambda: np.empty(0), repr=False)
    _seg_h: np.ndarray = field(default_factory=lambda: np.empty(0), repr=False)
    _seg_y0: np.ndarray = field(default_factory=lambda: np.empty((0, 3)), repr=False)
    _seg_Q: np.ndarray = field(default_factory=lambda: np.empty((0, 3, 4)), repr=False)
    _seg_frac: np.ndarray = field(default_factory=lambda: np.empty(0), repr=False)

    def cartesian(self) -> np.ndarray:
        x, y = polar_to_xy(self.theta, self.r)
        return np.column_stack([x, y])

    @property
    def tau_span(self) -> tuple[float, float]:
        return float(min(self.tau[0], self.tau[-1])), float(max(self.tau[0], self.tau[-1]))

    def evaluate(self, tau: float) -> np.ndarray:
        """State ``(theta, r, t[, arc])`` at rescaled time ``tau`` from the dense output."""
        lo, hi = self.tau_span
        if not (lo - 1e-12 <= tau <= hi + 1e-12):
            raise OutOfSpan(f"tau={tau} outside [{lo}, {hi}]")
        if self._seg_h.size == 0:
            return np.array([self.theta[0], self.r[0], self.t[0]])
        # segments are ordered along the direction of integration
        key = (tau - self._seg_tau0) * np.sign(self._seg_h)
        j = int(np.clip(np.count_nonzero(key >= 0) - 1, 0, self._seg_h.size - 1))
        frac = (tau - self._seg_tau0[j]) / self._seg_h[j]
        frac = min(max(frac, 0.0), self._seg_frac[j])
        return _rk.dense_eval(self._seg_y0[j], self._seg_h[j], self._seg_Q[j], frac)


def physical_time_of(traj: PolarTrajectory, tau: float) -> float:
    """Physical time elapsed at rescaled time ``tau`` along a polar trajectory."""
    return float(traj.evaluate(tau)[2])


# -- the batch driver --------------------------------------------------------


@dataclass
class _Record:
    tau: list = field(default_factory=list)
    t: list = field(default_factory=list)
    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    polar: list = field(default_factory=list)
    arc: list = field(default_factory=list)
    seg_tau0: list = field(default_factory=list)
    seg_h: list = field(default_factory=list)
    seg_y0: list = field(default_factory=list)
    seg_Q: list = field(default_factory=list)
    seg_frac: list = field(default_factory=list)

    def add(self, tau, y, polar):
        self.tau.append(tau)
        self.t.append(y[2])
        self.a.append(y[0])
        self.b.append(y[1])
        self.polar.append(polar)
        if y.size > 3:
            self.arc.append(y[3])


@dataclass
class _BatchResult:
    codes: np.ndarray
    t: np.ndarray
    tau: np.ndarray
    xy: np.ndarray
    polar_state: np.ndarray
    steps: np.ndarray
    records: Optional[list[_Record]] = None

    def termination(self, i: int) -> Termination:
        code = int(self.codes[i])
        if code == _NONFINITE:
            raise NonFiniteState("integration produced a non-finite state; check tolerances")
        return Termination(_OUTCOMES[code], float(self.t[i]))


def _attracting_p(omega: float) -> Optional[np.ndarray]:
    p = interior_equilibrium(omega, tol_bif=0.0)
    if p is None:
        return None
    # sigma < 0 and delta > 0 in the polar chart, where r_P > 0 preserves orientation
    lin = Linearization(p.sigma, p.delta, p.discriminant, p.eigenvalues, p.eigenvectors)
    cls = classify_linearization(lin)
    if cls not in (EquilibriumClass.ATTRACTING_NODE, EquilibriumClass.ATTRACTING_FOCUS):
        return None
    return np.array([p.position_cartesian.x, p.position_cartesian.y])


def _make_rhs(omega: float, sign: float, polar: np.ndarray, with_arc: bool):
    all_polar = bool(polar.all())
    no_polar = not polar.any()

    def rhs(Y: np.ndarray) -> np.ndarray:
        out = np.empty_like(Y)
        with np.errstate(all="ignore"):
            if no_polar:
                fx, fy = cartesian_rhs(omega, Y[:, 0], Y[:, 1])
                out[:, 0], out[:, 1], out[:, 2] = fx, fy, 1.0
                if with_arc:
                    out[:, 3] = sign * np.hypot(fx, fy)
                return out
            if all_polar:
                th, r = Y[:, 0], Y[:, 1]
                fth, fr = polar_rhs(omega, th, r)
                out[:, 0], out[:, 1], out[:, 2] = fth, fr, r
                if with_arc:
                    out[:, 3] = sign * np.hypot(fr, r * fth)
                return out
            cm = ~polar
            fx, fy = cartesian_rhs(omega, Y[cm, 0], Y[cm, 1])
            out[cm, 0], out[cm, 1], out[cm, 2] = fx, fy, 1.0
            th, r = Y[polar, 0], Y[polar, 1]
            fth, fr = polar_rhs(omega, th, r)
            out[polar, 0], out[polar, 1], out[polar, 2] = fth, fr, r
            if with_arc:
                out[cm, 3] = sign * np.hypot(fx, fy)
                out[polar, 3] = sign * np.hypot(fr, r * fth)
        return out

    return rhs


def _to_xy(Y: np.ndarray, polar: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    px, py = polar_to_xy(Y[:, 0], Y[:, 1])
    return np.where(polar, px, Y[:, 0]), np.where(polar, py, Y[:, 1])


def _locate(fn, lo: float = 0.0, hi: float = 1.0) -> float:
    flo, fhi = fn(lo), fn(hi)
    if flo >= 0:
        return lo
    if fhi < 0:
        return hi
    return brentq(fn, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _drive(
    omega: float,
    y0: np.ndarray,
    polar0: np.ndarray,
    sign: float,
    cfg: IntegrationConfig,
    *,
    switching: bool = True,
    record: bool = False,
    stride: Optional[float] = None,
    max_arc: Optional[float] = None,
    window_radius: Optional[float] = None,
) -> _BatchResult:
    m = y0.shape[0]
    with_arc = max_arc is not None
    k = 4 if with_arc else 3
    window = cfg.window_radius if window_radius is None else window_radius
    p_xy = _attracting_p(omega) if sign > 0 else None

    codes = np.full(m, _ACTIVE)
    t_out = np.zeros(m)
    tau_out = np.zeros(m)
    xy_out = np.zeros((m, 2))
    pol_out = np.zeros((m, 2))
    steps_out = np.zeros(m, dtype=int)
    records = [_Record() for _ in range(m)] if record else None

    lane = np.arange(m)
    Y = np.zeros((m, k))
    Y[:, :2] = y0
    polar = polar0.astype(bool).copy()
    tau = np.zeros(m)
    steps = np.zeros(m, dtype=int)
    err_prev = np.full(m, 1e-4)
    rejected = np.zeros(m, dtype=bool)
    next_sample = np.full(m, stride if stride else np.inf)

    if record:
        for i in range(m):
            records[i].add(0.0, Y[i].copy(), bool(polar[i]))

    def cap_for(Y, polar):
        return np.where(polar, cfg.max_step / np.maximum(np.abs(Y[:, 1]), cfg.max_step), cfg.max_step)

    F = _make_rhs(omega, sign, polar, with_arc)(Y)
    H = sign * np.minimum(
        _rk.initial_step(_make_rhs(omega, sign, polar, with_arc), Y, F, cfg.rel_tol, cfg.abs_tol, sign),
        cap_for(Y, polar),
    )

    def finish(sel: np.ndarray, code: np.ndarray, Yf: np.ndarray, tphys: np.ndarray) -> None:
        ids = lane[sel]
        polf = polar[sel]
        codes[ids] = code
        t_out[ids] = np.where(np.isnan(tphys), Yf[:, 2], tphys)
        tau_out[ids] = tau[sel]
        x, y = _to_xy(Yf, polf)
        xy_out[ids, 0], xy_out[ids, 1] = x, y
        th, r = xy_to_polar(x, y)
        pol_out[ids, 0] = np.where(polf, Yf[:, 0], th)
        pol_out[ids, 1] = np.where(polf, Yf[:, 1], r)
        steps_out[ids] = steps[sel]

    while lane.size:
        H = sign * np.minimum(np.abs(H), cap_for(Y, polar))
        rhs = _make_rhs(omega, sign, polar, with_arc)
        Yn, Fn, err, K = _rk.step(rhs, Y, F, H)
        en = _rk.error_norm(err, Y, Yn, cfg.rel_tol, cfg.abs_tol)
        ok = np.isfinite(en) & (en <= 1.0) & np.all(np.isfinite(Yn), axis=1)

        done = np.zeros(lane.size, dtype=bool)
        code = np.full(lane.size, _ACTIVE)
        tphys = np.full(lane.size, np.nan)
        Yend = Yn.copy()
        frac_end = np.ones(lane.size)

        # rejected trial steps
        bad = ~ok
        if bad.any():
            H[bad] = H[bad] * _rk.reject_factor(en[bad])
            rejected[bad] = True
            tiny = bad & (np.abs(H) < 1e-14 * (1.0 + np.abs(Y[:, 2])))
            if tiny.any():
                done |= tiny
                code[tiny] = _NONFINITE
                Yend[tiny] = Y[tiny]
                frac_end[tiny] = 0.0

        acc = np.flatnonzero(ok)
        Q = _rk.dense_coefficients(K[:, acc]) if (record and acc.size) else None
        if acc.size:
            r_old, r_new = np.abs(Y[acc, 1]), np.abs(Yn[acc, 1])
            pol_a = polar[acc]
            ev_f = pol_a & (((r_old > cfg.eps_F) & (r_new <= cfg.eps_F)) | ((r_old <= cfg.eps_F) & (r_new < r_old)))
            ev_t = np.abs(Yn[acc, 2]) >= cfg.max_time
            ev_arc = (Yn[acc, 3] >= max_arc) if with_arc else np.zeros(acc.size, dtype=bool)
            for j in np.flatnonzero(ev_f | ev_t | ev_arc):
                i = acc[j]
                y0_i, h_i = Y[i], H[i]
                Q_i = Q[j] if Q is not None else _rk.dense_coefficients(K[:, [i]])[0]
                cands = []
                if ev_f[j]:
                    if r_old[j] <= cfg.eps_F:
                        cands.append((0.0, Outcome.REACHED_F))
                    else:
                        s = _locate(lambda s: cfg.eps_F - abs(_rk.dense_eval(y0_i, h_i, Q_i, s)[1]))
                        cands.append((s, Outcome.REACHED_F))
                if ev_t[j]:
                    s = _locate(lambda s: abs(_rk.dense_eval(y0_i, h_i, Q_i, s)[2]) - cfg.max_time)
                    cands.append((s, Outcome.MAX_TIME_EXCEEDED))
                if ev_arc[j]:
                    s = _locate(lambda s: _rk.dense_eval(y0_i, h_i, Q_i, s)[3] - max_arc)
                    cands.append((s, Outcome.LEFT_WINDOW))
                s, kind = min(cands, key=lambda c: c[0])
                ye = _rk.dense_eval(y0_i, h_i, Q_i, s)
                if kind is Outcome.MAX_TIME_EXCEEDED:
                    ye[2] = math.copysign(cfg.max_time, sign)
                Yend[i] = ye
                frac_end[i] = s
                done[i] = True
                code[i] = _OUTCOMES.index(kind)
                if kind is Outcome.REACHED_F:
                    # remaining distance covered at the local radial speed |omega sin(theta) - 1|
                    speed = max(abs(omega * math.sin(ye[0]) - 1.0), 1e-12)
                    tphys[i] = ye[2] + sign * abs(ye[1]) / speed

            # step-end checks for the remaining accepted lanes
            rest = acc[~done[acc]]
            if rest.size:
                Yr = Yn[rest]
                x, y = _to_xy(Yr, polar[rest])
                left = x * x + y * y > window * window
                conv = np.zeros(rest.size, dtype=bool)
                if p_xy is not None:
                    conv = np.hypot(x - p_xy[0], y - p_xy[1]) <= cfg.eps_P
                tau_next = tau[rest] + np.where(polar[rest], H[rest], 0.0)
                budget = (steps[rest] + 1 >= cfg.max_steps) | (np.abs(tau_next) >= cfg.max_rescaled_time)
                for sel, kind in ((conv, Outcome.CONVERGED_TO_P), (left, Outcome.LEFT_WINDOW), (budget, Outcome.MAX_TIME_EXCEEDED)):
                    hit = rest[sel & ~done[rest]]
                    done[hit] = True
                    code[hit] = _OUTCOMES.index(kind)

        # bookkeeping for accepted lanes
        if acc.size:
            if record:
                for j, i in enumerate(acc):
                    rec = records[lane[i]]
                    s_end = frac_end[i]
                    if stride:
                        t0, t1 = Y[i, 2], Yend[i, 2]
                        while next_sample[i] <= abs(t1):
                            target = sign * abs(next_sample[i])
                            yi, hi_, Qi = Y[i], H[i], Q[j]
                            s = _locate(lambda s: sign * (_rk.dense_eval(yi, hi_, Qi, s)[2] - target), 0.0, s_end)
                            ys = _rk.dense_eval(yi, hi_, Qi, s)
                            rec.add(tau[i] + (H[i] * s if polar[i] else 0.0), ys, bool(polar[i]))
                            next_sample[i] += stride
                    if polar[i]:
                        rec.seg_tau0.append(tau[i])
                        rec.seg_h.append(H[i])
                        rec.seg_y0.append(Y[i].copy())
                        rec.seg_Q.append(Q[j].copy())
                        rec.seg_frac.append(s_end)
                    if not stride or done[i]:
                        rec.add(tau[i] + (H[i] * s_end if polar[i] else 0.0), Yend[i].copy(), bool(polar[i]))
            tau[acc] += np.where(polar[acc], H[acc] * frac_end[acc], 0.0)
            steps[acc] += 1
            fac = _rk.next_factor(en[acc], err_prev[acc])
            fac = np.where(rejected[acc], np.minimum(fac, 1.0), fac)
            err_prev[acc] = np.maximum(en[acc], 1e-4)
            rejected[acc] = False
            Y[acc] = Yn[acc]
            F[acc] = Fn[acc]
            H[acc] = H[acc] * fac

        if done.any():
            finish(done, code[done], Yend[done], tphys[done])
            keep = ~done
            lane, Y, F, H = lane[keep], Y[keep], F[keep], H[keep]
            polar, tau, steps = polar[keep], tau[keep], steps[keep]
            err_prev, rejected, next_sample = err_prev[keep], rejected[keep], next_sample[keep]

        if switching and lane.size:
            r_now = np.where(polar, np.abs(Y[:, 1]), np.hypot(1.0 - Y[:, 0], Y[:, 1]))
            to_pol = ~polar & (r_now < cfg.chart_switch_radius)
            to_cart = polar & (r_now > 2.0 * cfg.chart_switch_radius)
            if to_pol.any() or to_cart.any():
                if to_pol.any():
                    th, r = xy_to_polar(Y[to_pol, 0], Y[to_pol, 1])
                    Y[to_pol, 0], Y[to_pol, 1] = th, r
                    H[to_pol] = H[to_pol] / r
                if to_cart.any():
                    r = Y[to_cart, 1]
                    x, y = polar_to_xy(Y[to_cart, 0], r)
                    Y[to_cart, 0], Y[to_cart, 1] = x, y
                    H[to_cart] = H[to_cart] * np.abs(r)
                sw = to_pol | to_cart
                polar = np.where(sw, ~polar, polar)
                err_prev[sw] = 1e-4
                F = _make_rhs(omega, sign, polar, with_arc)(Y)

    return _BatchResult(codes, t_out, tau_out, xy_out, pol_out, steps_out, records)


# -- public API --------------------------------------------------------------


def _start_arrays(points: np.ndarray, cfg: IntegrationConfig) -> tuple[np.ndarray, np.ndarray]:
    x, y = points[:, 0], points[:, 1]
    d = np.hypot(1.0 - x, y)
    polar = d < cfg.chart_switch_radius
    th, r = xy_to_polar(x, y)
    y0 = np.column_stack([np.where(polar, th, x), np.where(polar, r, y)])
    return y0, polar


def _omega_value(omega) -> float:
    omega = float(getattr(omega, "omega", omega))
    if not math.isfinite(omega) or omega < 0:
        raise InvalidParameters(f"normalized omega must be finite and >= 0, got {omega}")
    return omega


def integrate(
    omega: float,
    start: CartesianState,
    direction: DirectionLike = Direction.FORWARD,
    cfg: Optional[IntegrationConfig] = None,
    *,
    sample_stride: Optional[float] = None,
) -> Trajectory:
    """Integrate one orbit of the normalized model from a cartesian start.

    ``sample_stride`` (physical time) switches the samples from accepted
    step ends to dense-output samples on a uniform time grid.
    """
    cfg = cfg or IntegrationConfig()
    omega = _omega_value(omega)
    direction = _direction(direction)
    if math.hypot(1.0 - start.x, start.y) < FOCUS_EPS:
        raise StartAtFocus("cannot start an orbit at F")
    if sample_stride is not None and not sample_stride > 0:
        raise InvalidParameters("sample_stride must be positive")
    y0, polar = _start_arrays(np.array([[start.x, start.y]]), cfg)
    res = _drive(omega, y0, polar, direction.sign, cfg, record=True, stride=sample_stride)
    term = res.termination(0)
    rec = res.records[0]
    a, b, pol = np.array(rec.a), np.array(rec.b), np.array(rec.polar, dtype=bool)
    px, py = polar_to_xy(a, b)
    pts = np.column_stack([np.where(pol, px, a), np.where(pol, py, b)])
    t = np.array(rec.t)
    # an arrival detected at the very start of a step repeats the previous sample
    if t.size > 1 and t[-2] == rec.t[-1] and np.array_equal(pts[-2], pts[-1]):
        t, pts = t[:-1], pts[:-1]
    return Trajectory(t, pts, term, direction)


def integrate_polar(
    omega: float,
    start: PolarState,
    direction: DirectionLike = Direction.FORWARD,
    cfg: Optional[IntegrationConfig] = None,
    *,
    sample_stride: Optional[float] = None,
    max_arc: Optional[float] = None,
    window_radius: Optional[float] = None,
) -> PolarTrajectory:
    """Integrate the polynomial polar field, carrying physical time along.

    With ``max_arc`` set, the cartesian arc length is integrated as well and
    the run stops (``LeftWindow``) once it exceeds ``max_arc``.
    """
    cfg = cfg or IntegrationConfig()
    omega = _omega_value(omega)
    direction = _direction(direction)
    y0 = np.array([[start.theta, start.r]], dtype=float)
    res = _drive(
        omega,
        y0,
        np.array([True]),
        direction.sign,
        cfg,
        switching=False,
        record=True,
        stride=sample_stride,
        max_arc=max_arc,
        window_radius=window_radius,
    )
    term = res.termination(0)
    rec = res.records[0]
    k = 4 if max_arc is not None else 3
    return PolarTrajectory(
        tau=np.array(rec.tau),
        t=np.array(rec.t),
        theta=np.array(rec.a),
        r=np.array(rec.b),
        termination=term,
        direction=direction,
        arc=np.array(rec.arc) if max_arc is not None else None,
        _seg_tau0=np.array(rec.seg_tau0),
        _seg_h=np.array(rec.seg_h),
        _seg_y0=np.array(rec.seg_y0).reshape(-1, k),
        _seg_Q=np.array(rec.seg_Q).reshape(-1, k, 4),
        _seg_frac=np.array(rec.seg_frac),
    )


@dataclass
class BatchOutcome:
    """Terminations of many independent orbits."""

    kinds: list[Optional[Outcome]]  # None where the state became non-finite
    t: np.ndarray
    end_points: np.ndarray


def integrate_many(
    omega: float,
    starts: Union[np.ndarray, Sequence[CartesianState]],
    direction: DirectionLike = Direction.FORWARD,
    cfg: Optional[IntegrationConfig] = None,
) -> BatchOutcome:
    """Integrate many cartesian starts in lock-step; no samples are kept."""
    cfg = cfg or IntegrationConfig()
    omega = _omega_value(omega)
    direction = _direction(direction)
    pts = np.array([[s.x, s.y] for s in starts]) if not isinstance(starts, np.ndarray) else np.asarray(starts, float)
    pts = pts.reshape(-1, 2)
    if pts.shape[0] == 0:
        return BatchOutcome([], np.empty(0), np.empty((0, 2)))
    if np.any(np.hypot(1.0 - pts[:, 0], pts[:, 1]) < FOCUS_EPS):
        raise StartAtFocus("cannot start an orbit at F")
    y0, polar = _start_arrays(pts, cfg)
    res = _drive(omega, y0, polar, direction.sign, cfg)
    kinds = [None if c == _NONFINITE else _OUTCOMES[c] for c in res.codes]
    return BatchOutcome(kinds, res.t, res.xy)
