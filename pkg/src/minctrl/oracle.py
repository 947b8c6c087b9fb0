"""Brute-force verification: fixed-step RK4 integration and schedule grid search.

Everything here deliberately avoids the closed-form time formulas of the
solver so that agreement between the two routes is meaningful.  Trajectories
are integrated with plain fixed-step RK4 (no adaptivity, so convergence-order
tests stay crisp); candidate schedules are searched on a duration lattice with
curve crossings detected by sign change and refined by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import (
    START,
    ControlBounds,
    ControlSchedule,
    PhasePoint,
    TargetCurve,
    ZState,
    curve_residual,
    energy_ratio,
    propagate_arc,
    propagate_schedule,
    x_to_z,
)
from .solver import (
    ExtremalFamily,
    ExtremalSolution,
    SolverConfig,
    find_roots,
    interswitch_time_x,
    interswitch_time_y,
)

try:
    from numba import njit
except Exception:  # pragma: no cover - numba is an optional accelerator
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


class StepInstability(RuntimeError):
    """x1 collapsed below the resolvable scale during integration."""


class NotReached(RuntimeError):
    """No lattice schedule crossed the target curve within the horizon."""


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-4
    event_tol: float = 1e-10

    def __post_init__(self):
        if self.step <= 0.0 or self.event_tol <= 0.0:
            raise ValueError("step and event_tol must be positive")


@dataclass(frozen=True)
class GridSearchSpec:
    n_switchings: int
    per_arc_grid: int = 400
    time_horizon: float = 20.0

    def __post_init__(self):
        if self.n_switchings < 1 or self.n_switchings % 2 == 0:
            raise ValueError(f"n_switchings must be odd and >= 1, got {self.n_switchings}")
        if self.per_arc_grid < 2:
            raise ValueError("per_arc_grid must be >= 2")
        if self.time_horizon <= 0.0:
            raise ValueError("time_horizon must be positive")


@dataclass
class SampledTrajectory:
    t: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    u: np.ndarray

    @property
    def final_state(self) -> PhasePoint:
        return PhasePoint(float(self.x1[-1]), float(self.x2[-1]))


@dataclass
class SampledZTrajectory:
    t: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    z3: np.ndarray
    u: np.ndarray
    casimir_drift: float = 0.0

    @property
    def final_state(self) -> ZState:
        return ZState(float(self.z1[-1]), float(self.z2[-1]), float(self.z3[-1]))


@njit(cache=True)
def _rk4_x_segment(x1, x2, u, h, nsteps, out_x1, out_x2, offset):
    for i in range(nsteps):
        k1a = x2
        k1b = -u * x1 + 1.0 / x1 ** 3
        a = x1 + 0.5 * h * k1a
        b = x2 + 0.5 * h * k1b
        k2a = b
        k2b = -u * a + 1.0 / a ** 3
        a = x1 + 0.5 * h * k2a
        b = x2 + 0.5 * h * k2b
        k3a = b
        k3b = -u * a + 1.0 / a ** 3
        a = x1 + h * k3a
        b = x2 + h * k3b
        k4a = b
        k4b = -u * a + 1.0 / a ** 3
        x1 = x1 + h * (k1a + 2.0 * k2a + 2.0 * k3a + k4a) / 6.0
        x2 = x2 + h * (k1b + 2.0 * k2b + 2.0 * k3b + k4b) / 6.0
        out_x1[offset + i] = x1
        out_x2[offset + i] = x2
        if not (x1 >= 1e-6):  # also catches NaN from a blow-up
            return -1.0, x2
    return x1, x2


@njit(cache=True)
def _rk4_z_segment(z1, z2, z3, u, h, nsteps, out_z1, out_z2, out_z3, offset):
    for i in range(nsteps):
        k11 = z3
        k12 = -u * z3
        k13 = -2.0 * u * z1 + 2.0 * z2
        a1 = z1 + 0.5 * h * k11
        a2 = z2 + 0.5 * h * k12
        a3 = z3 + 0.5 * h * k13
        k21 = a3
        k22 = -u * a3
        k23 = -2.0 * u * a1 + 2.0 * a2
        a1 = z1 + 0.5 * h * k21
        a2 = z2 + 0.5 * h * k22
        a3 = z3 + 0.5 * h * k23
        k31 = a3
        k32 = -u * a3
        k33 = -2.0 * u * a1 + 2.0 * a2
        a1 = z1 + h * k31
        a2 = z2 + h * k32
        a3 = z3 + h * k33
        k41 = a3
        k42 = -u * a3
        k43 = -2.0 * u * a1 + 2.0 * a2
        z1 = z1 + h * (k11 + 2.0 * k21 + 2.0 * k31 + k41) / 6.0
        z2 = z2 + h * (k12 + 2.0 * k22 + 2.0 * k32 + k42) / 6.0
        z3 = z3 + h * (k13 + 2.0 * k23 + 2.0 * k33 + k43) / 6.0
        out_z1[offset + i] = z1
        out_z2[offset + i] = z2
        out_z3[offset + i] = z3
    return z1, z2, z3


def _segment_steps(schedule: ControlSchedule, step: float) -> list[tuple[float, float, int, float]]:
    segs = []
    for u, dt in schedule.segments:
        if dt == 0.0:
            continue
        n = max(1, math.ceil(dt / step))
        segs.append((u, dt, n, dt / n))
    return segs


def integrate_x(p0: PhasePoint, schedule: ControlSchedule,
                cfg: IntegratorConfig = IntegratorConfig()) -> SampledTrajectory:
    """Fixed-step RK4 samples of the phase-plane flow under the schedule."""
    segs = _segment_steps(schedule, cfg.step)
    total = 1 + sum(n for _, _, n, _ in segs)
    t = np.empty(total)
    x1 = np.empty(total)
    x2 = np.empty(total)
    u_arr = np.empty(total)
    t[0], x1[0], x2[0] = 0.0, p0.x1, p0.x2
    u_arr[0] = segs[0][0] if segs else np.nan
    pos = 1
    t_acc = 0.0
    cx1, cx2 = p0.x1, p0.x2
    for u, dt, n, h in segs:
        t[pos:pos + n] = t_acc + h * np.arange(1, n + 1)
        u_arr[pos:pos + n] = u
        cx1, cx2 = _rk4_x_segment(cx1, cx2, u, h, n, x1, x2, pos)
        if cx1 < 0.0:
            raise StepInstability(f"x1 dropped below 1e-6 near t={t_acc:.6g} (u={u})")
        t_acc += dt
        pos += n
    return SampledTrajectory(t=t, x1=x1, x2=x2, u=u_arr)


def integrate_z(z0: ZState, schedule: ControlSchedule,
                cfg: IntegratorConfig = IntegratorConfig()) -> SampledZTrajectory:
    """Fixed-step RK4 samples of the second-moment flow, with Casimir drift tracked."""
    if abs(z0.casimir - 1.0) > 1e-6:
        raise ValueError(f"z0 must have unit Casimir companion, got {z0.casimir}")
    segs = _segment_steps(schedule, cfg.step)
    total = 1 + sum(n for _, _, n, _ in segs)
    t = np.empty(total)
    z1 = np.empty(total)
    z2 = np.empty(total)
    z3 = np.empty(total)
    u_arr = np.empty(total)
    t[0], z1[0], z2[0], z3[0] = 0.0, z0.z1, z0.z2, z0.z3
    u_arr[0] = segs[0][0] if segs else np.nan
    pos = 1
    t_acc = 0.0
    c1, c2, c3 = z0.z1, z0.z2, z0.z3
    for u, dt, n, h in segs:
        t[pos:pos + n] = t_acc + h * np.arange(1, n + 1)
        u_arr[pos:pos + n] = u
        c1, c2, c3 = _rk4_z_segment(c1, c2, c3, u, h, n, z1, z2, z3, pos)
        t_acc += dt
        pos += n
    if not (np.all(np.isfinite(z1)) and np.min(z1) >= 1e-12):
        raise StepInstability("z1 collapsed toward zero during integration")
    drift = float(np.max(np.abs(z1 * z2 - 0.25 * z3 ** 2 - 1.0)))
    return SampledZTrajectory(t=t, z1=z1, z2=z2, z3=z3, u=u_arr, casimir_drift=drift)


def _propagate_batch(x1, x2, u, dt):
    """Closed-form arc propagation on arrays (same math as dynamics.propagate_arc)."""
    c = x2 * x2 + u * x1 * x1 + 1.0 / (x1 * x1)
    disc = np.clip(c * c - 4.0 * u, 0.0, None)
    sq = np.sqrt(disc)
    su = math.sqrt(u)
    theta = np.arctan2(-2.0 * su * x1 * x2, 2.0 * u * x1 * x1 - c) + 2.0 * su * dt
    x1n = np.sqrt((c + sq * np.cos(theta)) / (2.0 * u))
    x2n = -sq * np.sin(theta) / (2.0 * su * x1n)
    return x1n, x2n

# Samples used to localize a curve crossing on the final arc before bisection.
_EVENT_SAMPLES = 1024


@dataclass
class GridSearchResult:
    min_time: float
    durations: tuple[float, ...]
    final_point: PhasePoint
    n_evaluated: int


def grid_search_min_time(curve: TargetCurve, bounds: ControlBounds, spec: GridSearchSpec,
                         solver_config: SolverConfig = SolverConfig()) -> GridSearchResult:
    """Least total time over a lattice of alternating-bang schedules hitting the curve.

    The leading u1 arc is gridded over [0, min(horizon, half period)].  For
    three or more switchings the intermediate arc durations are gridded on
    +/-20% windows around the analytic interswitch times of the family's best
    root (an unseeded lattice would be exponentially large); the one-switching
    lattice is fully unseeded.  The closing u2 arc is not gridded: its
    duration is the first curve crossing, located by residual sign change over
    sampled times and sharpened by bisection.  Ties break on lexicographically
    smaller durations.
    """
    u1, u2 = bounds.u1, bounds.u2
    n_turns = (spec.n_switchings - 1) // 2
    half_period_x = math.pi / (2.0 * math.sqrt(u1))
    first_grid = np.linspace(0.0, min(spec.time_horizon, half_period_x), spec.per_arc_grid)

    if spec.per_arc_grid ** (1 + 2 * n_turns) > 2_000_000:
        raise ValueError("lattice too large; lower per_arc_grid or n_switchings")

    windows: list[np.ndarray] = []
    if n_turns > 0:
        family_roots: list[float] = []
        for branch in (1, -1):
            family_roots += find_roots(ExtremalFamily(n_turns, branch), curve, bounds,
                                       solver_config)
        if not family_roots:
            raise NotReached(f"no analytic seed for {spec.n_switchings}-switching schedules")
        seeds = [(interswitch_time_x(s, bounds), interswitch_time_y(s, bounds))
                 for s in family_roots]
        t_x = min(s[0] for s in seeds)
        t_y = min(s[1] for s in seeds)
        for _ in range(n_turns):
            windows.append(np.linspace(0.8 * t_y, 1.2 * t_y, spec.per_arc_grid))
            windows.append(np.linspace(0.8 * t_x, 1.2 * t_x, spec.per_arc_grid))

    # lattice of switch states: start from the first-arc grid, then fan out
    x1 = np.full(first_grid.shape, START.x1)
    x2 = np.full(first_grid.shape, START.x2)
    x1, x2 = _propagate_batch(x1, x2, u1, first_grid)
    elapsed = first_grid.copy()
    durations = first_grid[:, None]
    controls = [u1]
    for w, u in zip(windows, ([u2, u1] * n_turns)[: len(windows)]):
        x1 = np.repeat(x1, len(w))
        x2 = np.repeat(x2, len(w))
        durations = np.hstack([np.repeat(durations, len(w), axis=0),
                               np.tile(w, durations.shape[0])[:, None]])
        x1, x2 = _propagate_batch(x1, x2, u, np.tile(w, elapsed.shape[0]))
        elapsed = np.repeat(elapsed, len(w)) + np.tile(w, elapsed.shape[0])
        controls.append(u)

    keep = elapsed <= spec.time_horizon
    x1, x2, elapsed, durations = x1[keep], x2[keep], elapsed[keep], durations[keep]
    if x1.size == 0:
        raise NotReached("every lattice point exceeds the time horizon")

    # final arc: first residual sign change within one full u2 period
    period = math.pi / math.sqrt(u2)
    ts = np.linspace(0.0, period, _EVENT_SAMPLES)
    two_over_re = 2.0 / curve.r_e
    r_prev = (x2 * x2 + u1 * x1 * x1 + 1.0 / (x1 * x1)) - two_over_re
    lo = np.full(x1.shape, np.nan)
    hi = np.full(x1.shape, np.nan)
    open_mask = np.ones(x1.shape, dtype=bool)
    for k in range(1, _EVENT_SAMPLES):
        y1, y2 = _propagate_batch(x1, x2, u2, ts[k])
        r_now = (y2 * y2 + u1 * y1 * y1 + 1.0 / (y1 * y1)) - two_over_re
        crossed = open_mask & (r_prev * r_now <= 0.0) & np.isfinite(r_now)
        lo[crossed] = ts[k - 1]
        hi[crossed] = ts[k]
        open_mask &= ~crossed
        r_prev = r_now
    if np.any(open_mask):
        # the residual dips only around the arc's outer turning point; probe that
        # instant explicitly so dips narrower than the sample spacing are not lost
        c_arc = x2 * x2 + u2 * x1 * x1 + 1.0 / (x1 * x1)
        theta0 = np.arctan2(-2.0 * math.sqrt(u2) * x1 * x2, 2.0 * u2 * x1 * x1 - c_arc)
        t_turn = ((2.0 * math.pi - theta0) % (2.0 * math.pi)) / (2.0 * math.sqrt(u2))
        y1, y2 = _propagate_batch(x1, x2, u2, t_turn)
        r_turn = (y2 * y2 + u1 * y1 * y1 + 1.0 / (y1 * y1)) - two_over_re
        dipped = open_mask & (r_turn <= 0.0) & (t_turn <= period)
        if np.any(dipped):
            k_before = np.clip(np.searchsorted(ts, t_turn[dipped]) - 1, 0, None)
            lo[dipped] = ts[k_before]
            hi[dipped] = t_turn[dipped]
    found = np.isfinite(lo)
    if not np.any(found):
        raise NotReached("no lattice schedule crosses the target curve")

    fx1, fx2 = x1[found], x2[found]
    flo, fhi = lo[found], hi[found]
    y1, y2 = _propagate_batch(fx1, fx2, u2, flo)
    r_lo = (y2 * y2 + u1 * y1 * y1 + 1.0 / (y1 * y1)) - two_over_re
    for _ in range(60):
        mid = 0.5 * (flo + fhi)
        y1, y2 = _propagate_batch(fx1, fx2, u2, mid)
        r_mid = (y2 * y2 + u1 * y1 * y1 + 1.0 / (y1 * y1)) - two_over_re
        take_lo = r_lo * r_mid <= 0.0
        fhi = np.where(take_lo, mid, fhi)
        flo = np.where(take_lo, flo, mid)
        r_lo = np.where(take_lo, r_lo, r_mid)
    t_cross = 0.5 * (flo + fhi)

    totals = elapsed[found] + t_cross
    order = np.lexsort(tuple(durations[found][:, i] for i in range(durations.shape[1] - 1, -1, -1))
                       + (totals,))
    best = order[0]
    best_durs = tuple(durations[found][best]) + (float(t_cross[best]),)
    p = START
    for u, dt in zip(controls + [u2], best_durs):
        p = propagate_arc(p, u, dt)
    return GridSearchResult(min_time=float(totals[best]), durations=best_durs,
                            final_point=p, n_evaluated=int(x1.size))


@dataclass
class VerificationReport:
    endpoint_residual_closed: float
    endpoint_residual_rk4: float
    max_switch_ratio_error: float
    switch_signs_ok: bool
    formula_consistency_error: float
    casimir_drift: float
    endpoint_energy_error: float
    passed: bool
    failures: tuple[str, ...]
    tolerances: dict = field(default_factory=dict)


def verify_solution(sol: ExtremalSolution, curve: TargetCurve, bounds: ControlBounds,
                    cfg: IntegratorConfig = IntegratorConfig(),
                    closed_tol: float = 1e-9, rk4_tol: float = 1e-7,
                    ratio_tol: float = 1e-9, casimir_tol: float = 1e-9,
                    energy_tol: float = 1e-9, formula_tol: float = 1e-9) -> VerificationReport:
    """Re-derive every contract of a solution from its schedule alone.

    The schedule is replayed with exact arcs and with RK4; switch ratios,
    endpoint residuals, Casimir drift and the endpoint energy are measured
    against the solution's own target.  Failures are reported, not raised.
    """
    failures = []
    u1, u2 = bounds.u1, bounds.u2

    endpoint = propagate_schedule(START, sol.schedule)
    res_closed = abs(curve_residual(endpoint, curve))

    traj = integrate_x(START, sol.schedule, cfg)
    res_rk4 = abs(curve_residual(traj.final_state, curve))

    p = START
    ratio_err = 0.0
    signs_ok = True
    for i, (u, dt) in enumerate(sol.schedule.segments[:-1]):
        p = propagate_arc(p, u, dt)
        ratio_err = max(ratio_err, abs((p.x2 / p.x1) ** 2 - sol.s))
        if (p.x2 > 0.0) != (i % 2 == 0):
            signs_ok = False

    expected = [(u1, sol.tau_first)]
    for _ in range(sol.family.n):
        expected += [(u2, sol.tau_y), (u1, sol.tau_x)]
    expected.append((u2, sol.tau_final))
    formula_err = abs(sol.total_time - sol.schedule.total_duration)
    if len(expected) == len(sol.schedule.segments):
        for (ue, te), (us, t_s) in zip(expected, sol.schedule.segments):
            formula_err = max(formula_err, abs(te - t_s), abs(ue - us))
    else:
        formula_err = math.inf

    ztraj = integrate_z(x_to_z(START), sol.schedule, cfg)
    energy_err = abs(energy_ratio(endpoint, u1) - 1.0 / curve.r_e)

    if res_closed > closed_tol:
        failures.append(f"closed-form endpoint residual {res_closed:.3e} > {closed_tol:.1e}")
    if res_rk4 > rk4_tol:
        failures.append(f"rk4 endpoint residual {res_rk4:.3e} > {rk4_tol:.1e}")
    if ratio_err > ratio_tol:
        failures.append(f"switch ratio error {ratio_err:.3e} > {ratio_tol:.1e}")
    if not signs_ok:
        failures.append("switch x2 signs do not alternate +,-,+,...")
    if formula_err > formula_tol:
        failures.append(f"schedule/formula mismatch {formula_err:.3e} > {formula_tol:.1e}")
    if ztraj.casimir_drift > casimir_tol:
        failures.append(f"casimir drift {ztraj.casimir_drift:.3e} > {casimir_tol:.1e}")
    if energy_err > energy_tol:
        failures.append(f"endpoint energy error {energy_err:.3e} > {energy_tol:.1e}")

    return VerificationReport(
        endpoint_residual_closed=res_closed,
        endpoint_residual_rk4=res_rk4,
        max_switch_ratio_error=ratio_err,
        switch_signs_ok=signs_ok,
        formula_consistency_error=formula_err,
        casimir_drift=ztraj.casimir_drift,
        endpoint_energy_error=energy_err,
        passed=not failures,
        failures=tuple(failures),
        tolerances={"closed": closed_tol, "rk4": rk4_tol, "ratio": ratio_tol,
                    "casimir": casimir_tol, "energy": energy_tol, "formula": formula_tol},
    )
