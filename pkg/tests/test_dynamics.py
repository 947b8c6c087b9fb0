import math

import numpy as np
import pytest

from minctrl.dynamics import (
    START,
    ControlBounds,
    ControlSchedule,
    PhasePoint,
    TargetCurve,
    arc_constant,
    curve_residual,
    energy_ratio,
    propagate_arc,
    propagate_schedule,
    x_to_z,
)
from minctrl.oracle import IntegratorConfig, integrate_x

GAMMA = 10.0
BOUNDS = ControlBounds(GAMMA)


def random_points(rng, n):
    return [PhasePoint(float(x1), float(x2))
            for x1, x2 in zip(rng.uniform(0.1, 10.0, n), rng.uniform(-3.0, 3.0, n))]


class TestTypes:
    def test_bounds_derived_fields(self):
        assert BOUNDS.u1 == GAMMA ** -4
        assert BOUNDS.u2 == 1.0
        assert BOUNDS.c1 == 1.0 + BOUNDS.u1

    def test_bounds_rejects_gamma_at_most_one(self):
        for g in (1.0, 0.5, -2.0, math.inf):
            with pytest.raises(ValueError):
                ControlBounds(g)

    def test_phase_point_domain(self):
        with pytest.raises(ValueError):
            PhasePoint(0.0, 1.0)
        with pytest.raises(ValueError):
            PhasePoint(-1.0, 0.0)

    def test_curve_interval_validation(self):
        lo, hi = BOUNDS.re_interval()
        assert lo == pytest.approx(2.0 * GAMMA ** 4 / (GAMMA ** 4 + 1), rel=1e-15)
        assert hi == GAMMA ** 2
        TargetCurve.for_bounds(0.5 * (lo + hi), BOUNDS)
        for bad in (lo, hi, 1.0, 150.0):
            with pytest.raises(ValueError):
                TargetCurve.for_bounds(bad, BOUNDS)

    def test_schedule_total_duration_and_validation(self):
        sched = ControlSchedule.from_pairs([(1.0, 0.5), (BOUNDS.u1, 1.5)])
        assert sched.total_duration == 2.0
        with pytest.raises(ValueError):
            ControlSchedule.from_pairs([(1.0, -0.1)])
        with pytest.raises(ValueError):
            ControlSchedule.from_pairs([(0.0, 0.1)])

    def test_schedule_boundary_jumps(self):
        sched = ControlSchedule.from_pairs([(BOUNDS.u1, 1.0), (1.0, 1.0)],
                                           u_before=1.0, u_after=BOUNDS.u1)
        assert sched.control_at(0.0) == 1.0
        assert sched.control_at(0.5) == BOUNDS.u1
        assert sched.control_at(1.5) == 1.0
        assert sched.control_at(2.0) == BOUNDS.u1


class TestEnergyRatio:
    def test_initial_equilibrium(self):
        assert energy_ratio(START, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_minimum_energy_state(self):
        # state (gamma, 0) measured at the lower control gives E0/gamma^2
        assert energy_ratio(PhasePoint(GAMMA, 0.0), BOUNDS.u1) == pytest.approx(
            GAMMA ** -2, rel=1e-14)

    def test_sudden_quench_energy(self):
        e_sc = energy_ratio(START, BOUNDS.u1)
        assert e_sc == pytest.approx((GAMMA ** 4 + 1) / (2 * GAMMA ** 4), rel=1e-14)
        assert e_sc == pytest.approx(0.50005, abs=1e-15)

    def test_rejects_nonpositive_control(self):
        with pytest.raises(ValueError):
            energy_ratio(START, 0.0)


class TestCurveResidual:
    def test_degenerate_curve_touches_gamma_axis_point(self):
        curve = TargetCurve(GAMMA ** 2 * (1 - 1e-12), BOUNDS.u1)
        assert curve_residual(PhasePoint(GAMMA, 0.0), curve) == pytest.approx(0.0, abs=1e-9)

    def test_start_on_curve_when_re_matches_quench_constant(self):
        # residual at (1,0) vanishes only for r_E = 2/(1+u1)
        curve = TargetCurve(2.0 / (1.0 + BOUNDS.u1) + 1e-9, BOUNDS.u1)
        assert abs(curve_residual(START, curve)) < 1e-8

    def test_reference_curve_meets_axis_at_eight(self):
        curve = TargetCurve.for_bounds(90.8059, BOUNDS)
        assert abs(curve_residual(PhasePoint(8.0, 0.0), curve)) < 5e-5


class TestPropagateArc:
    def test_equilibrium_point_is_fixed(self):
        for dt in (0.0, 0.3, 10.0):
            p = propagate_arc(START, 1.0, dt)
            assert (p.x1, p.x2) == pytest.approx((1.0, 0.0), abs=1e-13)

    def test_half_period_reaches_opposite_turning_point(self):
        u1 = BOUNDS.u1
        p = propagate_arc(START, u1, math.pi / (2.0 * math.sqrt(u1)))
        assert p.x1 == pytest.approx(GAMMA ** 2, rel=1e-12)
        assert p.x2 == pytest.approx(0.0, abs=1e-9)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            propagate_arc(START, -1.0, 1.0)
        with pytest.raises(ValueError):
            propagate_arc(START, 1.0, -1.0)

    def test_agrees_with_rk4(self):
        # independent route: fixed-step RK4 on the equations of motion
        rng = np.random.default_rng(7)
        for u in (BOUNDS.u1, 1.0):
            for tau in rng.uniform(0.0, 5.0, 3):
                sched = ControlSchedule.from_pairs([(u, float(tau))])
                rk4 = integrate_x(START, sched, IntegratorConfig(step=1e-5)).final_state
                exact = propagate_arc(START, u, float(tau))
                assert abs(rk4.x1 - exact.x1) < 1e-8
                assert abs(rk4.x2 - exact.x2) < 1e-8

    def test_arc_conservation(self):
        rng = np.random.default_rng(3)
        for p in random_points(rng, 50):
            u = float(rng.uniform(BOUNDS.u1, 1.0))
            dt = float(rng.uniform(0.0, 10.0))
            c0 = arc_constant(p, u)
            c1 = arc_constant(propagate_arc(p, u, dt), u)
            assert abs(c1 - c0) <= 1e-12 * c0

    def test_group_property(self):
        # tolerance is relative to the arc constant: phase rounding is magnified
        # near turning points by the arc's oscillation amplitude
        rng = np.random.default_rng(11)
        for p in random_points(rng, 30):
            u = float(rng.choice([BOUNDS.u1, 1.0]))
            a, b = rng.uniform(0.0, 5.0, 2)
            scale = max(1.0, arc_constant(p, u))
            one = propagate_arc(propagate_arc(p, u, float(a)), u, float(b))
            two = propagate_arc(p, u, float(a + b))
            assert abs(one.x1 - two.x1) <= 1e-12 * scale
            assert abs(one.x2 - two.x2) <= 1e-12 * scale

    def test_reversibility(self):
        rng = np.random.default_rng(13)
        for p in random_points(rng, 30):
            u = float(rng.uniform(BOUNDS.u1, 1.0))
            dt = float(rng.uniform(0.0, 8.0))
            scale = max(1.0, arc_constant(p, u))
            fwd = propagate_arc(p, u, dt)
            back = propagate_arc(PhasePoint(fwd.x1, -fwd.x2), u, dt)
            assert abs(back.x1 - p.x1) <= 1e-12 * scale
            assert abs(-back.x2 - p.x2) <= 1e-12 * scale

    def test_energy_floor_along_trajectories(self):
        # E measured at u1 never drops below 1/gamma^2 anywhere reachable
        rng = np.random.default_rng(17)
        floor = GAMMA ** -2
        for _ in range(20):
            p = START
            for _ in range(6):
                u = float(rng.choice([BOUNDS.u1, 1.0]))
                p = propagate_arc(p, u, float(rng.uniform(0.0, 3.0)))
                assert energy_ratio(p, BOUNDS.u1) >= floor - 1e-12


class TestSecondMoments:
    def test_equilibrium_moments(self):
        z = x_to_z(START)
        assert (z.z1, z.z2, z.z3) == (1.0, 1.0, 0.0)

    def test_turning_point_moments(self):
        z = x_to_z(PhasePoint(GAMMA, 0.0))
        assert z.z1 == pytest.approx(GAMMA ** 2, rel=1e-15)
        assert z.z2 == pytest.approx(GAMMA ** -2, rel=1e-15)
        assert z.z3 == 0.0

    def test_casimir_identity(self):
        rng = np.random.default_rng(23)
        for p in random_points(rng, 200):
            assert x_to_z(p).casimir == pytest.approx(1.0, rel=1e-13)

    def test_schedule_composition(self):
        sched = ControlSchedule.from_pairs([(BOUNDS.u1, 2.0), (1.0, 1.0), (BOUNDS.u1, 0.5)])
        p = propagate_schedule(START, sched)
        q = START
        for u, dt in sched.segments:
            q = propagate_arc(q, u, dt)
        assert (p.x1, p.x2) == (q.x1, q.x2)
