"""Parameters, the two coordinate charts and the vector field in each of them.

The cartesian chart is the plane of the original model with the focus at
``F = (1, 0)`` (normalized units).  The polar chart is centred at F::

    x = 1 - r cos(theta),   y = r sin(theta)

and the polar field is the cartesian one multiplied by ``r`` (a time
rescaling ``dt = r dtau``), which removes the singularity at F.  Negative
``r`` is admitted as a formal extension of the chart.

Array-level helpers (``cartesian_rhs``, ``polar_rhs`` ...) accept numpy
arrays and broadcast; the public functions work on single states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from mwkit.errors import InvalidParameters, SingularAtFocus

# distance to F (normalized units) below which the cartesian field is undefined
FOCUS_EPS = 1e-13


@dataclass(frozen=True)
class Params:
    """Physical parameters: rotation ``omega``, swimming speed ``v``, focal distance ``R``."""

    omega: float
    v: float = 1.0
    R: float = 1.0

    def __post_init__(self) -> None:
        for name in ("omega", "v", "R"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameters(f"{name} must be finite")
        if self.omega < 0:
            raise InvalidParameters(f"omega must be >= 0, got {self.omega}")
        if self.v <= 0:
            raise InvalidParameters(f"v must be > 0, got {self.v}")
        if self.R <= 0:
            raise InvalidParameters(f"R must be > 0, got {self.R}")


@dataclass(frozen=True)
class NormalizedParams:
    """Dimensionless rotation rate ``omega * R / v`` (with ``v = R = 1``)."""

    omega: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.omega) or self.omega < 0:
            raise InvalidParameters(f"normalized omega must be finite and >= 0, got {self.omega}")


@dataclass(frozen=True)
class Scale:
    """Factors mapping normalized quantities back to physical units."""

    length: float
    time: float

    def point(self, x: float, y: float) -> tuple[float, float]:
        return x * self.length, y * self.length

    def duration(self, t: float) -> float:
        return t * self.time

    def rate(self, omega: float) -> float:
        """Physical angular velocity for a normalized one."""
        return omega / self.time


@dataclass(frozen=True)
class CartesianState:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite cartesian state ({self.x}, {self.y})")

    @property
    def z(self) -> float:
        """Squared distance to the origin."""
        return self.x * self.x + self.y * self.y

    def distance_to_focus(self) -> float:
        return math.hypot(1.0 - self.x, self.y)


@dataclass(frozen=True)
class PolarState:
    theta: float
    r: float


OmegaLike = Union[NormalizedParams, float]


def _omega(p: OmegaLike) -> float:
    if isinstance(p, NormalizedParams):
        return p.omega
    return NormalizedParams(float(p)).omega


def normalize(p: Params) -> tuple[NormalizedParams, Scale]:
    """Collapse ``(omega, v, R)`` to the single dimensionless rotation rate.

    Lengths scale by ``R`` and times by ``R / v``.
    """
    return NormalizedParams(p.omega * p.R / p.v), Scale(length=p.R, time=p.R / p.v)


def denormalize(np_: NormalizedParams, v: float = 1.0, R: float = 1.0) -> Params:
    return Params(omega=np_.omega * v / R, v=v, R=R)


# -- array level -------------------------------------------------------------


def cartesian_rhs(omega: float, x, y):
    d = np.hypot(1.0 - x, y)
    return -omega * y + (1.0 - x) / d, omega * x - y / d


def polar_rhs(omega: float, theta, r):
    return -omega * (r - np.cos(theta)), r * (omega * np.sin(theta) - 1.0)


def polar_to_xy(theta, r):
    return 1.0 - r * np.cos(theta), r * np.sin(theta)


def xy_to_polar(x, y):
    """Inverse chart map on the branch ``r >= 0``."""
    u = 1.0 - x
    return np.arctan2(y, u), np.hypot(u, y)


def polar_jacobian(omega: float, theta: float, r: float) -> np.ndarray:
    """Jacobian of the polar field, rows (dtheta, dr), columns (theta, r)."""
    s, c = math.sin(theta), math.cos(theta)
    return np.array(
        [
            [-omega * s, -omega],
            [omega * r * c, omega * s - 1.0],
        ]
    )


# -- single states -----------------------------------------------------------


def vector_field_cartesian(p: OmegaLike, s: CartesianState) -> tuple[float, float]:
    """Velocity ``(dx/dt, dy/dt)`` of the normalized model at ``s``."""
    omega = _omega(p)
    d = math.hypot(1.0 - s.x, s.y)
    if d < FOCUS_EPS:
        raise SingularAtFocus(f"field undefined at distance {d:g} from F")
    return -omega * s.y + (1.0 - s.x) / d, omega * s.x - s.y / d


def vector_field_polar(p: OmegaLike, s: PolarState) -> tuple[float, float]:
    """``(dtheta/dtau, dr/dtau)``; polynomial in r, defined everywhere."""
    omega = _omega(p)
    return -omega * (s.r - math.cos(s.theta)), s.r * (omega * math.sin(s.theta) - 1.0)


def to_polar(s: CartesianState) -> PolarState:
    u = 1.0 - s.x
    r = math.hypot(u, s.y)
    if r < FOCUS_EPS:
        raise SingularAtFocus("polar angle undefined at F")
    return PolarState(math.atan2(s.y, u), r)


def to_cartesian(s: PolarState) -> CartesianState:
    return CartesianState(1.0 - s.r * math.cos(s.theta), s.r * math.sin(s.theta))


def radial_derivative(s: PolarState) -> float:
    """Derivative of ``z = x**2 + y**2`` along the polar field (rescaled time).

    Does not depend on omega.  Negative exactly outside the disk C when r > 0.
    """
    return -2.0 * s.r * (s.r - math.cos(s.theta))


# -- geometric loci ----------------------------------------------------------


def border_g_radius(theta):
    """Polar radius of the circle x**2 + y**2 = 1 (border of G)."""
    return 2.0 * np.cos(theta)


def border_c_radius(theta):
    """Polar radius of the circle of centre (1/2, 0) and radius 1/2 (border of C)."""
    return np.cos(theta)


def inside_g(x, y, tol: float = 0.0):
    return x * x + y * y <= 1.0 + tol


def inside_c(x, y, tol: float = 0.0):
    return (x - 0.5) ** 2 + y * y <= 0.25 + tol
