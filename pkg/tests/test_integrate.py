from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from mwkit import CartesianState, InvalidParameters, OutOfSpan, PolarState, StartAtFocus
from mwkit.analysis import interior_equilibrium
from mwkit.integrate import (
    Direction,
    IntegrationConfig,
    Outcome,
    integrate,
    integrate_many,
    integrate_polar,
    physical_time_of,
)
from mwkit.model import cartesian_rhs


def reference_end(omega, start, t_end):
    sol = solve_ivp(lambda t, y: cartesian_rhs(omega, *y), (0, t_end), start, method="DOP853", rtol=1e-12, atol=1e-14)
    return sol.y[:, -1]


class TestArrival:
    @pytest.mark.parametrize("d", [0.5, 1.0, 2.0, 7.5])
    def test_radial_infall_time(self, d):
        tr = integrate(0.0, CartesianState(1 - d, 0.0))
        assert tr.termination.kind is Outcome.REACHED_F
        assert tr.termination.t == pytest.approx(d, abs=1e-9)

    def test_off_axis_infall(self):
        tr = integrate(0.0, CartesianState(1 + 0.6, -0.8))
        assert tr.termination.t == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("omega", [0.3, 0.8])
    def test_reaches_focus_below_one(self, omega):
        tr = integrate(omega, CartesianState(-1.5, 2.0))
        assert tr.termination.kind is Outcome.REACHED_F
        assert math.hypot(1 - tr.points[-1, 0], tr.points[-1, 1]) < 1e-6

    def test_chart_switch_radius_does_not_move_arrival(self):
        a = integrate(0.7, CartesianState(-1.0, 0.5)).termination.t
        b = integrate(0.7, CartesianState(-1.0, 0.5), cfg=IntegrationConfig(chart_switch_radius=5e-2)).termination.t
        assert a == pytest.approx(b, abs=1e-7)

    @given(st.floats(0.0, 0.95), st.floats(-math.pi, math.pi), st.floats(0.05, 0.95))
    @settings(max_examples=25, deadline=None)
    def test_every_start_in_g_reaches_focus(self, omega, phi, rho):
        tr = integrate(omega, CartesianState(rho * math.cos(phi), rho * math.sin(phi)))
        assert tr.termination.kind is Outcome.REACHED_F
        assert np.all(np.diff(tr.t) >= 0)


class TestAccuracy:
    @pytest.mark.parametrize("start", [(0.1, 0.1), (-0.5, 0.8), (2.0, -1.0)])
    def test_matches_reference_solver(self, start):
        cfg = IntegrationConfig(max_time=5.0)
        tr = integrate(2.0, CartesianState(*start), cfg=cfg)
        assert tr.termination.kind is Outcome.MAX_TIME_EXCEEDED
        assert tr.termination.t == 5.0
        assert np.allclose(tr.points[-1], reference_end(2.0, start, 5.0), atol=1e-7)

    def test_backward_retraces_forward(self):
        cfg = IntegrationConfig(max_time=3.0)
        fwd = integrate(2.0, CartesianState(-0.5, 0.8), cfg=cfg)
        back = integrate(2.0, fwd.end, Direction.BACKWARD, cfg)
        assert back.termination.kind is Outcome.MAX_TIME_EXCEEDED
        assert np.allclose(back.points[-1], [-0.5, 0.8], atol=1e-7)

    def test_converges_to_p(self):
        tr = integrate(2.0, CartesianState(0.1, 0.1))
        assert tr.termination.kind is Outcome.CONVERGED_TO_P
        p = interior_equilibrium(2.0).position_cartesian
        assert math.hypot(tr.end.x - p.x, tr.end.y - p.y) <= 1e-6

    def test_stride_sampling(self):
        tr = integrate(2.0, CartesianState(-0.5, 0.8), cfg=IntegrationConfig(max_time=4.0), sample_stride=0.5)
        assert np.allclose(tr.t, np.arange(0.0, 4.01, 0.5))


class TestStops:
    def test_left_window(self):
        # backward in time the swimmer recedes from F at unit speed
        tr = integrate(0.0, CartesianState(0.0, 0.0), Direction.BACKWARD, IntegrationConfig(window_radius=10.0))
        assert tr.termination.kind is Outcome.LEFT_WINDOW

    def test_stationary_chart_point_hits_budget(self):
        tr = integrate_polar(2.0, PolarState(math.pi / 2, 0.0))
        assert tr.termination.kind is Outcome.MAX_TIME_EXCEEDED

    def test_start_at_focus(self):
        with pytest.raises(StartAtFocus):
            integrate(1.5, CartesianState(1.0, 0.0))

    @pytest.mark.parametrize(
        "kw", [dict(rel_tol=-1.0), dict(max_step=0.0), dict(eps_F=0.1), dict(max_time=math.inf)]
    )
    def test_config_validation(self, kw):
        with pytest.raises(InvalidParameters):
            IntegrationConfig(**kw)

    def test_bad_stride(self):
        with pytest.raises(InvalidParameters):
            integrate(2.0, CartesianState(0.0, 0.0), sample_stride=0.0)


class TestPolar:
    def test_physical_time_of_radial_infall(self):
        # r = exp(-tau) and dt/dtau = r give t = 1 - exp(-tau)
        tr = integrate_polar(0.0, PolarState(0.0, 1.0), cfg=IntegrationConfig(max_rescaled_time=20.0))
        for tau in [0.5, 2.0, 10.0]:
            assert physical_time_of(tr, tau) == pytest.approx(1 - math.exp(-tau), abs=1e-10)

    def test_dense_output_hits_samples(self):
        tr = integrate_polar(2.0, PolarState(0.3, 1.2), cfg=IntegrationConfig(max_rescaled_time=5.0))
        for i in range(0, tr.tau.size, max(tr.tau.size // 7, 1)):
            assert np.allclose(tr.evaluate(tr.tau[i])[:2], [tr.theta[i], tr.r[i]], atol=1e-12)

    def test_evaluate_out_of_span(self):
        tr = integrate_polar(2.0, PolarState(0.3, 1.2), cfg=IntegrationConfig(max_rescaled_time=1.0))
        with pytest.raises(OutOfSpan):
            tr.evaluate(tr.tau_span[1] + 1.0)

    def test_arc_length_stop(self):
        tr = integrate_polar(0.0, PolarState(0.0, 5.0), Direction.BACKWARD, max_arc=2.0)
        assert tr.termination.kind is Outcome.LEFT_WINDOW
        assert tr.arc[-1] == pytest.approx(2.0, abs=1e-9)
        assert tr.r[-1] == pytest.approx(7.0, abs=1e-8)


class TestBatch:
    def test_matches_single_runs(self):
        starts = np.array([[0.1, 0.1], [-1.0, 0.5], [0.0, -0.9], [3.0, 3.0]])
        batch = integrate_many(2.0, starts)
        for (x, y), kind, t in zip(starts, batch.kinds, batch.t):
            single = integrate(2.0, CartesianState(x, y))
            assert kind is single.termination.kind
            assert t == single.termination.t  # lanes are bit-identical to single runs

    def test_empty(self):
        assert integrate_many(2.0, np.empty((0, 2))).kinds == []

    def test_rejects_focus(self):
        with pytest.raises(StartAtFocus):
            integrate_many(2.0, np.array([[0.0, 0.0], [1.0, 0.0]]))
