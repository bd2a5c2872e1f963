from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwkit import InvalidParameters, NoInteriorEquilibrium, NoSaddle, PolarState
from mwkit.analysis import (
    NODE_FOCUS_OMEGA,
    EquilibriumClass,
    all_equilibria,
    bifurcation_scan,
    classify_P,
    interior_equilibrium,
    linearize_polar,
    mirror_equilibrium,
    refine_equilibrium,
    saddle_points,
    separatrix_and_border_slopes,
)
from mwkit.model import polar_rhs

above_one = st.floats(1.0 + 1e-6, 50.0)


def eig_oracle(J):
    """Eigenvalues of a 2x2 matrix from trace and determinant."""
    tr, det = J[0, 0] + J[1, 1], J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
    disc = complex(tr * tr - 4 * det)
    return sorted([(tr + disc**0.5) / 2, (tr - disc**0.5) / 2], key=lambda z: (-z.real, -z.imag))


class TestInteriorEquilibrium:
    @given(above_one)
    @settings(max_examples=200, deadline=None)
    def test_position_is_stationary(self, omega):
        p = interior_equilibrium(omega)
        th, r = polar_rhs(omega, p.position_polar.theta, p.position_polar.r)
        assert abs(th) < 1e-12 * omega and abs(r) < 1e-12
        assert math.sin(p.position_polar.theta) == pytest.approx(1 / omega, rel=1e-12)

    @given(above_one)
    @settings(max_examples=200, deadline=None)
    def test_cartesian_closed_form(self, omega):
        c = interior_equilibrium(omega).position_cartesian
        assert c.x == pytest.approx(1 / omega**2, rel=1e-12)
        assert c.y == pytest.approx(math.sqrt(1 - 1 / omega**2) / omega, rel=1e-9, abs=1e-15)

    def test_omega_two(self):
        c = interior_equilibrium(2.0).position_cartesian
        assert (c.x, c.y) == pytest.approx((0.25, math.sqrt(3) / 4), abs=1e-15)

    @given(above_one)
    @settings(max_examples=100, deadline=None)
    def test_lies_on_border_of_c(self, omega):
        c = interior_equilibrium(omega).position_cartesian
        assert (c.x - 0.5) ** 2 + c.y**2 == pytest.approx(0.25, abs=1e-12)

    @pytest.mark.parametrize("omega", [0.0, 0.5, 1.0])
    def test_absent_for_small_omega(self, omega):
        assert interior_equilibrium(omega) is None
        with pytest.raises(NoInteriorEquilibrium):
            classify_P(omega)

    @given(above_one)
    @settings(max_examples=100, deadline=None)
    def test_trace_and_determinant(self, omega):
        p = interior_equilibrium(omega)
        assert p.sigma == -1.0
        assert p.delta == pytest.approx(omega**2 - 1, rel=1e-12, abs=1e-12)

    def test_mirror_has_same_determinant(self):
        p, m = interior_equilibrium(3.0), mirror_equilibrium(3.0)
        assert m.position_polar.r == pytest.approx(-p.position_polar.r)
        assert m.delta == pytest.approx(p.delta)

    @pytest.mark.parametrize(
        "omega, expected",
        [(1.05, EquilibriumClass.ATTRACTING_NODE), (1.1, EquilibriumClass.ATTRACTING_NODE), (1.2, EquilibriumClass.ATTRACTING_FOCUS), (3.0, EquilibriumClass.ATTRACTING_FOCUS)],
    )
    def test_node_or_focus(self, omega, expected):
        assert classify_P(omega) is expected

    def test_boundaries_are_degenerate(self):
        assert classify_P(NODE_FOCUS_OMEGA).is_degenerate
        assert saddle_points(1.0)[1].cls is EquilibriumClass.DEGENERATE_PITCHFORK

    def test_newton_recovers_closed_form(self):
        rng = np.random.default_rng(7)
        p = interior_equilibrium(2.0).position_polar
        hits = 0
        for th, r in zip(rng.uniform(0.2, 1.3, 20), rng.uniform(0.3, 1.2, 20)):
            s = refine_equilibrium(2.0, PolarState(th, r))
            if s is not None and s.r > 0.1:
                assert (s.theta, s.r) == pytest.approx((p.theta, p.r), abs=1e-12)
                hits += 1
        assert hits > 0


class TestLinearization:
    @given(st.floats(0, 20), st.floats(-math.pi, math.pi), st.floats(-3, 3))
    @settings(max_examples=300, deadline=None)
    def test_trace_is_minus_one(self, omega, theta, r):
        assert linearize_polar(omega, PolarState(theta, r)).sigma == -1.0

    @given(st.floats(0.01, 20), st.floats(-math.pi, math.pi), st.floats(-3, 3))
    @settings(max_examples=200, deadline=None)
    def test_determinant_closed_form(self, omega, theta, r):
        lin = linearize_polar(omega, PolarState(theta, r))
        expected = -(omega**2) + omega * math.sin(theta) + omega**2 * r * math.cos(theta) + omega**2 * math.cos(theta) ** 2
        assert lin.delta == pytest.approx(expected, rel=1e-10, abs=1e-10 * omega**2)

    @given(st.floats(0.01, 20), st.floats(-math.pi, math.pi), st.floats(-3, 3))
    @settings(max_examples=200, deadline=None)
    def test_eigenvalues_match_trace_determinant(self, omega, theta, r):
        from mwkit.model import polar_jacobian

        lin = linearize_polar(omega, PolarState(theta, r))
        expect = eig_oracle(polar_jacobian(omega, theta, r))
        scale = 1 + omega**2
        got = sorted(lin.eigenvalues, key=lambda z: (-z.real, -z.imag))
        assert np.allclose(got, expect, atol=1e-6 * scale)


class TestSaddles:
    @given(st.floats(1.01, 30))
    @settings(max_examples=100, deadline=None)
    def test_eigenvalues(self, omega):
        s_minus, s_plus = saddle_points(omega)
        assert sorted(z.real for z in s_minus.eigenvalues) == pytest.approx([-(omega + 1), omega], rel=1e-12)
        assert sorted(z.real for z in s_plus.eigenvalues) == pytest.approx([-omega, omega - 1], rel=1e-12)
        assert s_minus.cls is EquilibriumClass.SADDLE and s_plus.cls is EquilibriumClass.SADDLE

    @given(st.floats(1.01, 30))
    @settings(max_examples=100, deadline=None)
    def test_separatrix_slopes(self, omega):
        s = separatrix_and_border_slopes(omega)
        assert s.unstable_at_s_plus == pytest.approx(-2 + 1 / omega, rel=1e-12)
        assert s.stable_at_s_minus == pytest.approx(2 + 1 / omega, rel=1e-12)
        assert s.stable_outside_g()
        assert s.unstable_between_g_and_c()

    def test_s_plus_is_chart_node_below_one(self):
        assert saddle_points(0.5)[1].cls is EquilibriumClass.CHART_NODE

    def test_no_saddle_slopes_below_one(self):
        with pytest.raises(NoSaddle):
            separatrix_and_border_slopes(0.8)

    def test_omega_zero_rejected(self):
        with pytest.raises(InvalidParameters):
            saddle_points(0.0)

    def test_census(self):
        assert [e.name for e in all_equilibria(2.0)] == ["S-", "S+", "P", "P_mirror"]
        assert len(all_equilibria(0.5)) == 2


class TestBifurcationScan:
    def test_locates_both_transitions(self):
        ev = bifurcation_scan(0.5, 3.0)
        assert [e.kind for e in ev] == ["Pitchfork", "NodeFocusTransition"]
        for e, target in zip(ev, [1.0, math.sqrt(5) / 2]):
            lo, hi = e.bracket
            assert lo <= target <= hi and hi - lo <= 1e-9
            assert e.omega == pytest.approx(target, abs=1e-9)

    def test_empty_range(self):
        assert bifurcation_scan(2.0, 3.0) == []

    def test_grid_point_on_transition(self):
        ev = bifurcation_scan(0.5, 1.5, step=0.25)
        assert ev[0].omega == 1.0

    @pytest.mark.parametrize("lo, hi", [(2.0, 2.0), (3.0, 1.0), (-1.0, 2.0)])
    def test_bad_range(self, lo, hi):
        with pytest.raises(InvalidParameters):
            bifurcation_scan(lo, hi)
