"""Equilibria of the polar field, their linearization and the bifurcations in omega.

All quantities are in normalized units.  Linearizations are taken in the
(theta, r) chart with rescaled time, where the divergence is identically -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from mwkit.errors import (
    DegenerateParameter,
    InvalidParameters,
    NoInteriorEquilibrium,
    NoSaddle,
)
from mwkit.model import (
    CartesianState,
    PolarState,
    polar_jacobian,
    polar_rhs,
    to_cartesian,
)

TOL_BIF = 1e-9
PITCHFORK_OMEGA = 1.0
NODE_FOCUS_OMEGA = math.sqrt(5.0) / 2.0

S_MINUS = PolarState(-math.pi / 2, 0.0)
S_PLUS = PolarState(math.pi / 2, 0.0)


class EquilibriumClass(str, Enum):
    ATTRACTING_NODE = "AttractingNode"
    ATTRACTING_FOCUS = "AttractingFocus"
    SADDLE = "Saddle"
    CHART_NODE = "HyperbolicNodeOfChart"
    DEGENERATE_PITCHFORK = "DegenerateTransition:PitchforkAtOmega1"
    DEGENERATE_NODE_FOCUS = "DegenerateTransition:NodeFocusBoundary"

    @property
    def is_degenerate(self) -> bool:
        return self.value.startswith("DegenerateTransition")


@dataclass(frozen=True)
class Linearization:
    sigma: float
    delta: float
    discriminant: float
    eigenvalues: tuple[complex, complex]
    # columns of the eigenvector matrix, None for a complex pair
    eigenvectors: Optional[tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class EquilibriumInfo:
    name: str
    position_polar: PolarState
    position_cartesian: Optional[CartesianState]
    sigma: float
    delta: float
    discriminant: float
    eigenvalues: tuple[complex, complex]
    eigenvectors: Optional[tuple[np.ndarray, np.ndarray]]
    cls: EquilibriumClass

    def eigenvector_for(self, eigenvalue: float) -> np.ndarray:
        """Real eigenvector whose eigenvalue is closest to ``eigenvalue``."""
        if self.eigenvectors is None:
            raise ValueError(f"{self.name} has a complex eigenvalue pair")
        k = int(np.argmin([abs(lam - eigenvalue) for lam in self.eigenvalues]))
        return self.eigenvectors[k]


@dataclass(frozen=True)
class BifurcationEvent:
    omega: float
    kind: str  # "Pitchfork" | "NodeFocusTransition"
    bracket: tuple[float, float]
    signs: tuple[int, int]


@dataclass(frozen=True)
class SlopeData:
    """dr/dtheta slopes in the polar chart at the chart saddles S- and S+."""

    unstable_at_s_plus: float
    stable_at_s_minus: float
    g_border_at_s_minus: float
    g_border_at_s_plus: float
    c_border_at_s_minus: float
    c_border_at_s_plus: float

    def stable_outside_g(self) -> bool:
        return self.stable_at_s_minus > self.g_border_at_s_minus

    def unstable_between_g_and_c(self) -> bool:
        return self.g_border_at_s_plus < self.unstable_at_s_plus < self.c_border_at_s_plus


def linearize_polar(omega: float, s: PolarState) -> Linearization:
    """Divergence, Jacobian determinant, discriminant and eigenpairs of the polar field."""
    J = polar_jacobian(omega, s.theta, s.r)
    # the +-omega*sin(theta) terms of the diagonal cancel, so the trace is exactly -1
    sigma = -1.0
    # closed form of det J; agrees with np.linalg.det but keeps the terms exact
    sn, c = math.sin(s.theta), math.cos(s.theta)
    delta = -omega * omega + omega * sn + omega * omega * s.r * c + omega * omega * c * c
    disc = sigma * sigma - 4.0 * delta
    w, V = np.linalg.eig(J)
    order = sorted(range(2), key=lambda k: (-w[k].real, -w[k].imag))
    eigvals = tuple(complex(w[k]) for k in order)
    vecs = None
    if all(abs(lam.imag) == 0.0 for lam in eigvals):
        vecs = tuple(_canonical(np.real(V[:, k])) for k in order)
    return Linearization(sigma, float(delta), float(disc), eigvals, vecs)


def _canonical(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    lead = v[0] if abs(v[0]) > 1e-14 else v[1]
    return -v if lead < 0 else v


def classify_linearization(lin: Linearization) -> EquilibriumClass:
    if lin.delta < 0:
        return EquilibriumClass.SADDLE
    if lin.delta > 0 and lin.sigma < 0:
        if lin.discriminant >= 0:
            return EquilibriumClass.ATTRACTING_NODE
        return EquilibriumClass.ATTRACTING_FOCUS
    raise DegenerateParameter(f"non-hyperbolic linearization (sigma={lin.sigma}, delta={lin.delta})")


def _info(name: str, omega: float, s: PolarState, cls: Optional[EquilibriumClass] = None) -> EquilibriumInfo:
    lin = linearize_polar(omega, s)
    if cls is None:
        cls = classify_linearization(lin)
    cart = to_cartesian(s) if s.r >= 0 else None
    return EquilibriumInfo(
        name=name,
        position_polar=s,
        position_cartesian=cart,
        sigma=lin.sigma,
        delta=lin.delta,
        discriminant=lin.discriminant,
        eigenvalues=lin.eigenvalues,
        eigenvectors=lin.eigenvectors,
        cls=cls,
    )


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not math.isfinite(omega) or omega < 0:
        raise InvalidParameters(f"normalized omega must be finite and >= 0, got {omega}")
    return omega


def _p_class(omega: float, tol_bif: float) -> EquilibriumClass:
    if abs(omega - NODE_FOCUS_OMEGA) <= tol_bif:
        return EquilibriumClass.DEGENERATE_NODE_FOCUS
    if abs(omega - PITCHFORK_OMEGA) <= tol_bif:
        return EquilibriumClass.DEGENERATE_PITCHFORK
    return EquilibriumClass.ATTRACTING_NODE if omega < NODE_FOCUS_OMEGA else EquilibriumClass.ATTRACTING_FOCUS


def interior_equilibrium(omega: float, tol_bif: float = TOL_BIF) -> Optional[EquilibriumInfo]:
    """The equilibrium P of the plane, or None when omega <= 1.

    At omega = 1 the candidate would sit on F itself; below it F attracts
    everything and there is no equilibrium in the plane.
    """
    omega = _check_omega(omega)
    if omega <= 1.0:
        return None
    theta = math.asin(1.0 / omega)
    r = math.sqrt(1.0 - 1.0 / (omega * omega))
    info = _info("P", omega, PolarState(theta, r), _p_class(omega, tol_bif))
    # use the closed form for the cartesian image rather than the chart map
    cart = CartesianState(1.0 / (omega * omega), r / omega)
    return EquilibriumInfo(**{**info.__dict__, "position_cartesian": cart})


def mirror_equilibrium(omega: float, tol_bif: float = TOL_BIF) -> Optional[EquilibriumInfo]:
    """The r < 0 branch born in the pitchfork; invisible in the plane."""
    omega = _check_omega(omega)
    if omega <= 1.0:
        return None
    theta = math.pi - math.asin(1.0 / omega)
    r = -math.sqrt(1.0 - 1.0 / (omega * omega))
    return _info("P_mirror", omega, PolarState(theta, r), _p_class(omega, tol_bif))


def classify_P(omega: float, tol_bif: float = TOL_BIF) -> EquilibriumClass:
    info = interior_equilibrium(omega, tol_bif)
    if info is None:
        raise NoInteriorEquilibrium(f"no interior equilibrium for omega = {omega} <= 1")
    return info.cls


def saddle_points(omega: float, tol_bif: float = TOL_BIF) -> list[EquilibriumInfo]:
    """The chart equilibria S- = (-pi/2, 0) and S+ = (pi/2, 0), in that order.

    S- is a saddle for every omega > 0.  S+ is a node of the chart for
    omega < 1 and a saddle for omega > 1; within ``tol_bif`` of 1 it is
    reported as the degenerate pitchfork point.
    """
    omega = _check_omega(omega)
    if omega == 0.0:
        raise InvalidParameters("for omega = 0 the whole line r = 0 is stationary")
    s_minus = _info("S-", omega, S_MINUS)
    if abs(omega - PITCHFORK_OMEGA) <= tol_bif:
        s_plus = _info("S+", omega, S_PLUS, EquilibriumClass.DEGENERATE_PITCHFORK)
    elif omega < 1.0:
        s_plus = _info("S+", omega, S_PLUS, EquilibriumClass.CHART_NODE)
    else:
        s_plus = _info("S+", omega, S_PLUS)
    return [s_minus, s_plus]


def all_equilibria(omega: float, tol_bif: float = TOL_BIF) -> list[EquilibriumInfo]:
    """Closed-form census of the polar field in the strip theta in (-pi, pi]."""
    out = saddle_points(omega, tol_bif)
    p = interior_equilibrium(omega, tol_bif)
    if p is not None:
        out.append(p)
        out.append(mirror_equilibrium(omega, tol_bif))
    return out


def _slope(v: np.ndarray) -> float:
    return float(v[1] / v[0])


def separatrix_and_border_slopes(omega: float, tol_bif: float = TOL_BIF) -> SlopeData:
    omega = _check_omega(omega)
    if omega <= 1.0 + tol_bif:
        raise NoSaddle(f"S+ is not a hyperbolic saddle for omega = {omega}")
    s_minus, s_plus = saddle_points(omega, tol_bif)
    stable = s_minus.eigenvector_for(-(omega + 1.0))
    unstable = s_plus.eigenvector_for(omega - 1.0)

    def g_slope(theta: float) -> float:
        return -2.0 * math.sin(theta)

    def c_slope(theta: float) -> float:
        return -math.sin(theta)

    return SlopeData(
        unstable_at_s_plus=_slope(unstable),
        stable_at_s_minus=_slope(stable),
        g_border_at_s_minus=g_slope(S_MINUS.theta),
        g_border_at_s_plus=g_slope(S_PLUS.theta),
        c_border_at_s_minus=c_slope(S_MINUS.theta),
        c_border_at_s_plus=c_slope(S_PLUS.theta),
    )


def refine_equilibrium(
    omega: float, seed: PolarState, tol: float = 1e-14, max_iter: int = 60
) -> Optional[PolarState]:
    """Newton iteration on the polar field; None if it does not converge."""
    x = np.array([seed.theta, seed.r], dtype=float)
    for _ in range(max_iter):
        f = np.array(polar_rhs(omega, x[0], x[1]))
        J = polar_jacobian(omega, x[0], x[1])
        try:
            dx = np.linalg.solve(J, -f)
        except np.linalg.LinAlgError:
            return None
        x += dx
        if not np.all(np.isfinite(x)):
            return None
        if np.linalg.norm(dx) <= tol * (1.0 + np.linalg.norm(x)):
            f = np.array(polar_rhs(omega, x[0], x[1]))
            if np.linalg.norm(f) < 1e-12:
                return PolarState(float(x[0]), float(x[1]))
            return None
    return None


# -- bifurcation detection ---------------------------------------------------


def pitchfork_detector(omega: float) -> float:
    """Largest real part of the S+ eigenvalues; changes sign at the pitchfork."""
    lin = linearize_polar(omega, S_PLUS)
    return max(lam.real for lam in lin.eigenvalues)


def node_focus_detector(omega: float) -> float:
    """Discriminant of the linearization at P (defined for omega > 1)."""
    p = interior_equilibrium(omega, tol_bif=0.0)
    if p is None:
        raise NoInteriorEquilibrium(f"omega = {omega}")
    return p.discriminant


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def _bisect(g: Callable[[float], float], a: float, b: float, ga: float, tol: float) -> tuple[float, float]:
    sa = _sign(ga)
    while b - a > tol:
        m = 0.5 * (a + b)
        gm = g(m)
        if gm == 0.0:
            return m, m
        if _sign(gm) == sa:
            a = m
        else:
            b = m
    return a, b


def _scan_one(
    g: Callable[[float], float], grid: np.ndarray, kind: str, tol: float
) -> list[BifurcationEvent]:
    events = []
    prev = None  # last (omega, value) with nonzero value
    zeros: list[float] = []
    for w in grid:
        val = g(float(w))
        if val == 0.0:
            zeros.append(float(w))
            continue
        if prev is not None and _sign(prev[1]) != _sign(val):
            a, b = prev[0], float(w)
            if zeros:
                lo, hi = zeros[0], zeros[0]
            else:
                lo, hi = _bisect(g, a, b, prev[1], tol)
            events.append(
                BifurcationEvent(
                    omega=0.5 * (lo + hi),
                    kind=kind,
                    bracket=(lo, hi),
                    signs=(_sign(g(a)), _sign(g(b))),
                )
            )
        prev = (float(w), val)
        zeros = []
    return events


def bifurcation_scan(
    omega_lo: float, omega_hi: float, step: float = 1e-2, tol: float = 1e-10
) -> list[BifurcationEvent]:
    """Locate the pitchfork of S+ and the node/focus transition of P in a range.

    Each detector is a scalar whose sign flips at the transition; sign changes
    on a uniform grid are bisected down to a bracket of width ``tol``.
    """
    if not (0 <= omega_lo < omega_hi):
        raise InvalidParameters(f"need 0 <= lo < hi, got [{omega_lo}, {omega_hi}]")
    if step <= 0:
        raise InvalidParameters("step must be positive")
    n = max(int(math.ceil((omega_hi - omega_lo) / step)), 1)
    grid = np.linspace(omega_lo, omega_hi, n + 1)
    events = _scan_one(pitchfork_detector, grid[grid > 0], "Pitchfork", tol)
    events += _scan_one(node_focus_detector, grid[grid > 1.0], "NodeFocusTransition", tol)
    return sorted(events, key=lambda e: e.omega)
