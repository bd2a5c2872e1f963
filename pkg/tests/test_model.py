from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwkit import (
    CartesianState,
    InvalidParameters,
    NormalizedParams,
    Params,
    PolarState,
    SingularAtFocus,
    normalize,
    radial_derivative,
    to_cartesian,
    to_polar,
    vector_field_cartesian,
    vector_field_polar,
)
from mwkit.model import (
    border_c_radius,
    border_g_radius,
    denormalize,
    inside_c,
    inside_g,
    polar_jacobian,
    polar_rhs,
)

omegas = st.floats(0.0, 20.0, allow_nan=False)
coords = st.floats(-5.0, 5.0, allow_nan=False)


def field_oracle(omega, x, y, v=1.0, R=1.0):
    """Rotation of the medium plus a unit-speed pull toward (R, 0), in complex form."""
    z = complex(x, y)
    to_f = complex(R, 0.0) - z
    w = 1j * omega * z + v * to_f / abs(to_f)
    return w.real, w.imag


def polar_oracle(omega, theta, r):
    """Chain rule through x = 1 - r cos(theta), y = r sin(theta), times r."""
    x, y = 1 - r * math.cos(theta), r * math.sin(theta)
    xd, yd = field_oracle(omega, x, y)
    J = np.array([[r * math.sin(theta), -math.cos(theta)], [r * math.cos(theta), math.sin(theta)]])
    thd, rd = np.linalg.solve(J, [xd, yd])
    return r * thd, r * rd


class TestParams:
    def test_normalize_collapses_family(self):
        npar, scale = normalize(Params(omega=3.0, v=2.0, R=0.5))
        assert npar.omega == pytest.approx(0.75)
        assert scale.length == 0.5
        assert scale.time == 0.25

    def test_denormalize_round_trip(self):
        p = Params(omega=1.7, v=3.0, R=2.0)
        npar, _ = normalize(p)
        back = denormalize(npar, v=3.0, R=2.0)
        assert back.omega == pytest.approx(p.omega, rel=1e-15)

    @pytest.mark.parametrize(
        "kw",
        [dict(omega=-1.0), dict(omega=1.0, v=0.0), dict(omega=1.0, R=-2.0), dict(omega=math.nan), dict(omega=math.inf)],
    )
    def test_rejects_invalid(self, kw):
        with pytest.raises(InvalidParameters):
            Params(**kw)

    def test_normalized_rejects_negative(self):
        with pytest.raises(InvalidParameters):
            NormalizedParams(-0.1)

    @given(omegas, st.floats(0.1, 10), st.floats(0.1, 10), coords, coords)
    @settings(max_examples=200, deadline=None)
    def test_physical_field_is_scaled_normalized_field(self, omega, v, R, x, y):
        if math.hypot(R - x, y) < 1e-6:
            return
        npar, scale = normalize(Params(omega=omega, v=v, R=R))
        phys = field_oracle(omega, x, y, v=v, R=R)
        norm = vector_field_cartesian(npar, CartesianState(x / scale.length, y / scale.length))
        # velocities scale by length / time = v
        assert np.allclose(np.array(norm) * v, phys, rtol=1e-12, atol=1e-12 * (1 + omega * math.hypot(x, y)))


class TestFields:
    @given(omegas, coords, coords)
    @settings(max_examples=300, deadline=None)
    def test_cartesian_matches_complex_oracle(self, omega, x, y):
        if math.hypot(1 - x, y) < 1e-9:
            return
        got = vector_field_cartesian(omega, CartesianState(x, y))
        assert np.allclose(got, field_oracle(omega, x, y), rtol=1e-13, atol=1e-13)

    @given(omegas, st.floats(-math.pi, math.pi), st.floats(1e-3, 5.0))
    @settings(max_examples=300, deadline=None)
    def test_polar_is_rescaled_cartesian(self, omega, theta, r):
        got = vector_field_polar(omega, PolarState(theta, r))
        assert np.allclose(got, polar_oracle(omega, theta, r), rtol=1e-9, atol=1e-9 * (1 + omega))

    def test_singular_at_focus(self):
        with pytest.raises(SingularAtFocus):
            vector_field_cartesian(2.0, CartesianState(1.0, 0.0))

    def test_polar_field_regular_at_r_zero(self):
        th, r = vector_field_polar(2.0, PolarState(0.3, 0.0))
        assert th == pytest.approx(2.0 * math.cos(0.3))
        assert r == 0.0

    def test_omega_zero_is_radial_infall(self):
        # distance to F decreases at unit speed
        for x, y in [(0.0, 0.0), (3.0, 1.0), (-2.0, -4.0)]:
            vx, vy = vector_field_cartesian(0.0, CartesianState(x, y))
            assert math.hypot(vx, vy) == pytest.approx(1.0)

    @given(omegas, st.floats(-math.pi, math.pi), st.floats(-3.0, 3.0))
    @settings(max_examples=100, deadline=None)
    def test_jacobian_matches_finite_differences(self, omega, theta, r):
        h = 1e-6
        J = polar_jacobian(omega, theta, r)
        fd = np.empty((2, 2))
        for j, (dt, dr) in enumerate([(h, 0.0), (0.0, h)]):
            fp = np.array(polar_rhs(omega, theta + dt, r + dr))
            fm = np.array(polar_rhs(omega, theta - dt, r - dr))
            fd[:, j] = (fp - fm) / (2 * h)
        assert np.allclose(J, fd, atol=1e-6 * (1 + omega) * (1 + abs(r)))

    @given(st.floats(-math.pi, math.pi), st.floats(0.0, 5.0), omegas)
    @settings(max_examples=200, deadline=None)
    def test_radial_derivative_is_chain_rule(self, theta, r, omega):
        # z = x^2 + y^2 differentiated along the rescaled polar flow
        x, y = 1 - r * math.cos(theta), r * math.sin(theta)
        thd, rd = vector_field_polar(omega, PolarState(theta, r))
        xd = r * math.sin(theta) * thd - math.cos(theta) * rd
        yd = r * math.cos(theta) * thd + math.sin(theta) * rd
        assert radial_derivative(PolarState(theta, r)) == pytest.approx(2 * (x * xd + y * yd), abs=1e-9 * (1 + omega))


class TestCharts:
    @given(coords, coords)
    def test_round_trip(self, x, y):
        if math.hypot(1 - x, y) < 1e-9:
            return
        back = to_cartesian(to_polar(CartesianState(x, y)))
        assert back.x == pytest.approx(x, abs=1e-12)
        assert back.y == pytest.approx(y, abs=1e-12)

    def test_polar_radius_is_distance_to_focus(self):
        s = to_polar(CartesianState(0.0, 0.0))
        assert s.r == pytest.approx(1.0)
        assert s.theta == pytest.approx(0.0)

    @given(st.floats(-1.5, 1.5))
    def test_borders(self, theta):
        # points on r = 2 cos(theta) lie on the unit circle, points on r = cos(theta) on the circle about (1/2, 0)
        s = to_cartesian(PolarState(theta, float(border_g_radius(theta))))
        assert s.x**2 + s.y**2 == pytest.approx(1.0, abs=1e-12)
        c = to_cartesian(PolarState(theta, float(border_c_radius(theta))))
        assert (c.x - 0.5) ** 2 + c.y**2 == pytest.approx(0.25, abs=1e-12)

    def test_membership(self):
        assert inside_g(0.0, 0.0) and not inside_g(2.0, 0.0)
        assert inside_c(0.5, 0.0) and not inside_c(0.0, 0.5)
