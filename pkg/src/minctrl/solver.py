"""Closed-form bang-bang extremals reaching a fixed-energy target curve.

Candidate time-optimal controls alternate between the control bounds,
starting on a u1 arc and ending on a u2 arc, with an odd number 2n+1 of
switchings.  All switching points share one squared slope s = (x2/x1)^2 with
alternating sign, which reduces each candidate family (n, branch) to a single
transcendental equation in s.  This module evaluates the arc-time formulas,
enumerates the roots of that equation, and assembles globally minimal
schedules.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import (
    START,
    ControlBounds,
    ControlSchedule,
    PhasePoint,
    TargetCurve,
    curve_residual,
)


class InfeasibleRoot(ValueError):
    """The final arc fixed by s cannot reach the target curve."""


class NoExtremalFound(RuntimeError):
    """No candidate family has a valid root for the requested target."""


class ValidationFailure(RuntimeError):
    """Synthesized trajectory disagrees with the closed-form quantities."""


@dataclass(frozen=True)
class ExtremalFamily:
    """Candidate family: n intermediate turns (2n+1 switchings) and a branch sign.

    The branch selects which intersection of the first arc with the switching
    line is used: -1 for the earlier crossing, +1 for the later one.
    """

    n: int
    branch: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.branch not in (-1, 1):
            raise ValueError(f"branch must be +1 or -1, got {self.branch}")

    @property
    def switchings(self) -> int:
        return 2 * self.n + 1

    @property
    def sign_label(self) -> str:
        return "+" if self.branch > 0 else "-"


@dataclass(frozen=True)
class SolverConfig:
    scan_points: int = 20000        # s-grid density for bracketing
    root_tol: float = 1e-14         # bisection interval tolerance, relative to s_max
    n_max: int = 6                  # largest number of turns enumerated
    residual_tol: float = 1e-9      # synthesis-vs-formula acceptance residual
    # Roots whose final point lands within this phase angle past the turning
    # point of the last arc are kept as tangential arrivals; anything further
    # past is a non-minimal second crossing and is discarded.
    tangential_slack: float = 1e-3

    def __post_init__(self):
        if self.scan_points < 100:
            raise ValueError("scan_points must be >= 100")
        if min(self.root_tol, self.residual_tol, self.tangential_slack) <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")


@dataclass(frozen=True)
class ExtremalSolution:
    """One validated root with every derived quantity and the synthesized schedule."""

    family: ExtremalFamily
    s: float
    tau_first: float
    tau_x: float
    tau_y: float
    tau_final: float
    total_time: float
    first_switch_x1sq: float
    last_switch_x1sq: float
    final_x1sq: float
    last_arc_constant: float
    switch_points: tuple[PhasePoint, ...]
    final_point: PhasePoint
    schedule: ControlSchedule
    root_index: int = 0
    tangential: bool = False

    @property
    def label(self) -> str:
        return f"T{self.family.sign_label}_{{{self.family.switchings},{self.root_index}}}"


def _check_s(s: float, bounds: ControlBounds) -> None:
    if not (0.0 < s <= bounds.s_max):
        raise ValueError(f"s={s} outside (0, {bounds.s_max}]")


def _propagate_arc_extended(x1, x2, u, dt):
    """Constant-control arc step in extended precision.

    Switch points sitting close to an arc's turning points amplify phase
    rounding by 1/sin(theta); float64 chains can lose eight digits there, so
    the reconstruction used for validation runs on numpy's longdouble.
    Inputs and outputs are longdouble scalars.
    """
    one = np.longdouble(1.0)
    c = x2 * x2 + u * x1 * x1 + one / (x1 * x1)
    disc = c * c - 4.0 * u
    if disc <= 0.0:
        return u ** np.longdouble(-0.25), np.longdouble(0.0)
    sq = np.sqrt(disc)
    su = np.sqrt(u)
    theta = np.arctan2(-2.0 * su * x1 * x2, 2.0 * u * x1 * x1 - c) + 2.0 * su * dt
    x1n = np.sqrt((c + sq * np.cos(theta)) / (2.0 * u))
    x2n = -sq * np.sin(theta) / (2.0 * su * x1n)
    return x1n, x2n


def interswitch_time_x(s: float, bounds: ControlBounds) -> float:
    """Duration of an intermediate u1 arc between consecutive switching lines.

    Equals arccos((s-u1)/(s+u1))/(2 sqrt(u1)), evaluated as an arcsine of the
    half-angle: arccos loses half its digits near argument 1 (s >> u1) and the
    error is amplified by the switch chain's turning-point sensitivity.  The
    formula is well defined for any s > 0, beyond the extremal range.
    """
    if s <= 0.0:
        raise ValueError(f"s must be positive, got {s}")
    u1 = bounds.u1
    return math.asin(math.sqrt(u1 / (s + u1))) / math.sqrt(u1)


def interswitch_time_y(s: float, bounds: ControlBounds) -> float:
    """Duration of an intermediate u2 arc between consecutive switching lines.

    Equals (2 pi - arccos((s-u2)/(s+u2)))/(2 sqrt(u2)), via the half-angle
    arcsine for the same conditioning reason as interswitch_time_x.  Well
    defined for any s > 0.
    """
    if s <= 0.0:
        raise ValueError(f"s must be positive, got {s}")
    u2 = bounds.u2
    return (math.pi - math.asin(math.sqrt(u2 / (s + u2)))) / math.sqrt(u2)


def first_arc_time(s: float, branch: int, bounds: ControlBounds) -> float:
    """Duration of the opening u1 arc from (1, 0) to the first switching point.

    Equals arccos(A)/(2 sqrt(u1)) with A = (s c1 -+ u1 sqrt(c1^2-4(s+u1))) /
    ((s+u1)(1-u1)), top sign for branch +.  A approaches +-1 at the ends of
    the s range, so 1 -+ A are evaluated in cancellation-free product form
    and the angle through half-angle arcsines.
    """
    _check_s(s, bounds)
    u1, c1 = bounds.u1, bounds.c1
    disc = c1 * c1 - 4.0 * (s + u1)
    if disc < 0.0:
        raise ValueError(f"first-arc discriminant negative at s={s}")
    root = math.sqrt(disc)
    den = (s + u1) * (1.0 - u1)
    # (1-2s-u1 - root)(1-2s-u1 + root) = 4s(s+u1); (1-u1-root)(1-u1+root) = 4s
    if branch > 0:
        one_minus = u1 * (1.0 - 2.0 * s - u1 + root) / den
        one_plus = 2.0 * s * (c1 + root) / ((1.0 - u1 + root) * den)
    else:
        one_minus = 4.0 * s * u1 / ((1.0 - 2.0 * s - u1 + root) * (1.0 - u1))
        one_plus = (2.0 * s + u1 * (1.0 - u1 + root)) / den
    if one_minus <= one_plus:
        angle = 2.0 * math.asin(math.sqrt(max(0.0, 0.5 * one_minus)))
    else:
        angle = math.pi - 2.0 * math.asin(math.sqrt(max(0.0, 0.5 * one_plus)))
    return angle / (2.0 * math.sqrt(u1))


def _final_arc_trig(s: float, bounds: ControlBounds) -> tuple[float, float]:
    u1, u2 = bounds.u1, bounds.u2
    disc = (u2 - u1) ** 2 - 4.0 * s * u1
    if disc < 0.0:
        raise ValueError(f"final-arc discriminant negative at s={s}")
    root = math.sqrt(disc)
    den = (s + u2) * (u2 - u1)
    cosv = (-s * (u1 + u2) + u2 * root) / den
    sinv = math.sqrt(s * u2) * (u1 + u2 + root) / den
    return cosv, sinv


def final_arc_time(s: float, bounds: ControlBounds) -> float:
    """Duration of the closing u2 arc, fixed by the terminal orthogonality condition.

    The (cos, sin) pair determines the angle on [0, 2 pi); the sine component
    is nonnegative on the whole admissible s range, which pins the angle to
    the principal arccos branch.  That quadrant assumption is asserted rather
    than trusted.
    """
    _check_s(s, bounds)
    cosv, sinv = _final_arc_trig(s, bounds)
    if sinv < -1e-12:
        raise ValueError(f"final-arc sine component negative at s={s}: {sinv}")
    ang = math.atan2(sinv, cosv) % (2.0 * math.pi)
    principal = math.acos(min(1.0, max(-1.0, cosv)))
    if abs(ang - principal) > 1e-9:
        raise ValueError(f"final-arc angle off the principal branch at s={s}")
    return principal / (2.0 * math.sqrt(bounds.u2))


def switch_x1sq_chain(s: float, family: ExtremalFamily, bounds: ControlBounds) -> tuple[float, float]:
    """x1^2 at the first and last switching points of the family."""
    _check_s(s, bounds)
    u1, u2, c1 = bounds.u1, bounds.u2, bounds.c1
    disc = c1 * c1 - 4.0 * (s + u1)
    if disc < 0.0:
        raise ValueError(f"switch-chain discriminant negative at s={s}")
    first = (c1 + family.branch * math.sqrt(disc)) / (2.0 * (s + u1))
    last = first * ((s + u2) / (s + u1)) ** family.n
    return first, last


def last_arc_constant(s: float, family: ExtremalFamily, bounds: ControlBounds) -> float:
    """Conserved constant of the final u2 arc through the last switching point."""
    _, last = switch_x1sq_chain(s, family, bounds)
    return (s + bounds.u2) * last + 1.0 / last


def final_x1sq(s: float, family: ExtremalFamily, curve: TargetCurve, bounds: ControlBounds) -> float:
    """x1^2 where the final arc meets the target curve."""
    c = last_arc_constant(s, family, bounds)
    num = c * curve.r_e - 2.0
    if num <= 0.0:
        raise InfeasibleRoot(f"final arc (c={c}) cannot reach the curve r_E={curve.r_e}")
    return num / (curve.r_e * (bounds.u2 - bounds.u1))


def _curve_parts(s, n: int, branch: int, u1: float, u2: float, c1: float, r_e: float):
    """Vectorized residual pieces for the curve problem.

    Returns (residual, final_x1sq, final_mu_sq, quadrant_margin); infeasible
    s values are marked NaN in the residual so scans treat them as gaps.
    """
    s = np.asarray(s, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        disc1 = c1 * c1 - 4.0 * (s + u1)
        k_first = (c1 + branch * np.sqrt(disc1)) / (2.0 * (s + u1))
        k_last = k_first * ((s + u2) / (s + u1)) ** n
        c = (s + u2) * k_last + 1.0 / k_last
        sq = np.sqrt(c * c - 4.0 * u2)
        y_last = np.clip((2.0 * u2 * k_last - c) / sq, -1.0, 1.0)
        kf = (c * r_e - 2.0) / (r_e * (u2 - u1))
        y_final = (2.0 * u2 * kf - c) / sq
        disc_t = (u2 - u1) ** 2 - 4.0 * s * u1
        root_t = np.sqrt(disc_t)
        den = (s + u2) * (u2 - u1)
        cosv = (-s * (u1 + u2) + u2 * root_t) / den
        sinv = np.sqrt(np.clip(s, 0.0, None) * u2) * (u1 + u2 + root_t) / den
        residual = y_final - (y_last * cosv + np.sqrt(np.clip(1.0 - y_last ** 2, 0.0, None)) * sinv)
        residual = np.where(kf > 0.0, residual, np.nan)
        # phase angle left on the arc before its turning point, minus the
        # transversality angle; negative means the landing lies past the turn
        quadrant = np.arccos(y_last) - np.arccos(np.clip(cosv, -1.0, 1.0))
        mu_sq = 2.0 / r_e - u1 * kf - 1.0 / kf
    return residual, kf, mu_sq, quadrant


def transcendental_residual(s: float, family: ExtremalFamily, curve: TargetCurve,
                            bounds: ControlBounds) -> float:
    """Root function in s for the given family and curve; NaN marks infeasible s."""
    _check_s(s, bounds)
    res, _, _, _ = _curve_parts(s, family.n, family.branch, bounds.u1, bounds.u2,
                                bounds.c1, curve.r_e)
    return float(res)


def fixed_endpoint_residual(s: float, family: ExtremalFamily, bounds: ControlBounds,
                            x1_target: float | None = None) -> float:
    """Root function for the degenerate target: the single point (x1_target, 0).

    The defining equation is a ratio of large terms, so the residual is
    returned in log form (same roots, far better conditioned); NaN marks
    infeasible s.
    """
    _check_s(s, bounds)
    res = _fixed_endpoint_parts(s, family.n, family.branch, bounds,
                                bounds.gamma if x1_target is None else x1_target)
    return float(res)


def _fixed_endpoint_parts(s, n: int, branch: int, bounds: ControlBounds, x1_target: float):
    u1, u2, c1 = bounds.u1, bounds.u2, bounds.c1
    c = u2 * x1_target ** 2 + 1.0 / x1_target ** 2
    s = np.asarray(s, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        disc1 = c1 * c1 - 4.0 * (s + u1)
        disc2 = c * c - 4.0 * (s + u2)
        lhs = (c + np.sqrt(disc2)) / (c1 + branch * np.sqrt(disc1))
        log_rhs = (n + 1) * (np.log(s + u2) - np.log(s + u1))
        return np.log(lhs) - log_rhs


def _bracket_roots(values: np.ndarray, grid: np.ndarray, fn, tol: float) -> list[float]:
    """Roots of fn from sign changes of its grid samples, bisected in parallel.

    Brackets whose midpoints turn NaN (infeasible gaps narrower than the grid)
    are dropped rather than treated as errors.
    """
    finite = np.isfinite(values)
    exact = finite & (values == 0.0)
    pair = finite[:-1] & finite[1:] & (values[:-1] * values[1:] < 0.0)
    roots = [float(g) for g in grid[exact]]
    idx = np.nonzero(pair)[0]
    if idx.size == 0:
        return sorted(roots)
    lo = grid[idx].astype(float)
    hi = grid[idx + 1].astype(float)
    f_lo = values[idx].astype(float)
    alive = np.ones(lo.shape, dtype=bool)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = np.asarray(fn(mid), dtype=float)
        alive &= np.isfinite(f_mid)
        hit = alive & (f_mid == 0.0)
        lo = np.where(hit, mid, lo)
        hi = np.where(hit, mid, hi)
        move_hi = alive & ~hit & (f_lo * f_mid < 0.0)
        move_lo = alive & ~hit & ~move_hi
        hi = np.where(move_hi, mid, hi)
        lo = np.where(move_lo, mid, lo)
        f_lo = np.where(move_lo, f_mid, f_lo)
        if np.all(~alive | (hi - lo <= tol)):
            break
    roots += [float(r) for r in (0.5 * (lo + hi))[alive]]
    return sorted(roots)


def _dedupe(roots: list[float], tol: float = 1e-10) -> list[float]:
    out: list[float] = []
    for r in sorted(roots):
        if not out or r - out[-1] > tol:
            out.append(r)
    return out


def find_roots(family: ExtremalFamily, curve: TargetCurve, bounds: ControlBounds,
               config: SolverConfig = SolverConfig()) -> list[float]:
    """All valid roots s of the family's transcendental equation, ascending.

    The scan grid is augmented with the zeros of the quadrant margin: root
    pairs straddle those tangency points, and without the extra nodes a pair
    narrower than the grid spacing would be missed.  Roots are kept when the
    final arc genuinely meets the curve (final_x1sq > 0, final x2^2 >= 0) no
    later than tangential_slack past its turning point.
    """
    u1, u2, c1 = bounds.u1, bounds.u2, bounds.c1
    args = (family.n, family.branch, u1, u2, c1, curve.r_e)
    grid = np.linspace(0.0, bounds.s_max, config.scan_points + 1)[1:]
    res, _, _, quad = _curve_parts(grid, *args)

    tol = config.root_tol * bounds.s_max
    tangencies = _bracket_roots(quad, grid, lambda x: _curve_parts(x, *args)[3], tol)
    if tangencies:
        grid = np.unique(np.concatenate([grid, np.asarray(tangencies)]))
        res = _curve_parts(grid, *args)[0]

    roots = _dedupe(_bracket_roots(res, grid, lambda x: _curve_parts(x, *args)[0], tol))

    valid = []
    for r in roots:
        _, kf, mu_sq, quadrant = (float(v) for v in _curve_parts(r, *args))
        if kf > 0.0 and mu_sq >= -1e-12 and quadrant >= -config.tangential_slack:
            valid.append(r)
    return valid


def build_solution(s: float, family: ExtremalFamily, curve: TargetCurve,
                   bounds: ControlBounds, residual_tol: float = 1e-9,
                   root_index: int = 0) -> ExtremalSolution:
    """Assemble times, switch points and schedule for a root, verifying by propagation.

    Every closed-form quantity is cross-checked against exact arc propagation
    of the synthesized schedule; disagreement beyond residual_tol raises
    ValidationFailure naming the broken check.
    """
    u1, u2 = bounds.u1, bounds.u2
    t_first = first_arc_time(s, family.branch, bounds)
    t_x = interswitch_time_x(s, bounds)
    t_y = interswitch_time_y(s, bounds)
    t_final = final_arc_time(s, bounds)
    total = t_first + family.n * (t_x + t_y) + t_final

    k_first, k_last = switch_x1sq_chain(s, family, bounds)
    c_last = last_arc_constant(s, family, bounds)
    k_final = final_x1sq(s, family, curve, bounds)

    segments = [(u1, t_first)]
    for _ in range(family.n):
        segments.append((u2, t_y))
        segments.append((u1, t_x))
    segments.append((u2, t_final))
    schedule = ControlSchedule.from_pairs(segments, u_before=u2, u_after=u1)

    switch_points = []
    sin_land = []  # |sin| of the arrival phase; conditioning of each switch point
    w1, w2 = np.longdouble(START.x1), np.longdouble(START.x2)
    for u, dt in segments[:-1]:
        w1, w2 = _propagate_arc_extended(w1, w2, np.longdouble(u), np.longdouble(dt))
        p = PhasePoint(float(w1), float(w2))
        c_arc = p.x2 ** 2 + u * p.x1 ** 2 + 1.0 / p.x1 ** 2
        sin_land.append(2.0 * math.sqrt(u) * p.x1 * abs(p.x2)
                        / math.sqrt(max(c_arc * c_arc - 4.0 * u, 1e-300)))
        switch_points.append(p)
    w1, w2 = _propagate_arc_extended(w1, w2, np.longdouble(segments[-1][0]),
                                     np.longdouble(segments[-1][1]))
    final_point = PhasePoint(float(w1), float(w2))

    def fail(check: str, value: float):
        raise ValidationFailure(
            f"{check} = {value:.3e} exceeds tolerance "
            f"(family n={family.n} branch={family.sign_label}, s={s!r})")

    eps_chain = np.finfo(np.longdouble).eps * len(segments) * 40.0
    for i, sp in enumerate(switch_points):
        ratio_err = abs((sp.x2 / sp.x1) ** 2 - s)
        # phase noise is magnified by cot(theta) ~ 1/sin at near-turning switches;
        # validate as tightly as the arithmetic can actually deliver
        tol_i = residual_tol + 4.0 * s * eps_chain / max(sin_land[i], 1e-30)
        if ratio_err > tol_i:
            fail(f"switch {i + 1} ratio error", ratio_err)
        want_positive = i % 2 == 0
        if (sp.x2 > 0.0) != want_positive:
            raise ValidationFailure(f"switch {i + 1} has x2 sign {'+' if sp.x2 > 0 else '-'},"
                                    f" expected {'+' if want_positive else '-'}")
    first_err = abs(switch_points[0].x1 ** 2 - k_first) / max(1.0, k_first)
    if first_err > residual_tol:
        fail("first switch x1^2 mismatch", first_err)
    last_err = abs(switch_points[-1].x1 ** 2 - k_last) / max(1.0, k_last)
    if last_err > residual_tol:
        fail("last switch x1^2 mismatch", last_err)
    res = abs(curve_residual(final_point, curve))
    if res > residual_tol:
        fail("final curve residual", res)
    kf_err = abs(final_point.x1 ** 2 - k_final) / max(1.0, k_final)
    if kf_err > residual_tol:
        fail("final x1^2 mismatch", kf_err)

    quadrant = float(_curve_parts(s, family.n, family.branch, u1, u2, bounds.c1, curve.r_e)[3])
    return ExtremalSolution(
        family=family, s=s, tau_first=t_first, tau_x=t_x, tau_y=t_y, tau_final=t_final,
        total_time=total, first_switch_x1sq=k_first, last_switch_x1sq=k_last,
        final_x1sq=k_final, last_arc_constant=c_last, switch_points=tuple(switch_points),
        final_point=final_point, schedule=schedule, root_index=root_index,
        tangential=quadrant < 0.0)


def minimize(curve: TargetCurve, bounds: ControlBounds,
             config: SolverConfig = SolverConfig()) -> tuple[ExtremalSolution, list[ExtremalSolution]]:
    """Globally minimal schedule plus the full candidate table.

    Families are enumerated for n = 0..n_max and both branches.  Within a
    family, root indices count solutions in increasing total time.  The table is sorted by (n, branch, index); ties on
    total time break toward smaller n, then branch +, then smaller index.
    """
    candidates: list[ExtremalSolution] = []
    for n in range(config.n_max + 1):
        for branch in (1, -1):
            family = ExtremalFamily(n, branch)
            roots = find_roots(family, curve, bounds, config)
            sols = [build_solution(s, family, curve, bounds, config.residual_tol)
                    for s in roots]
            sols.sort(key=lambda sol: sol.total_time)
            for k, sol in enumerate(sols, start=1):
                candidates.append(replace(sol, root_index=k))
    if not candidates:
        raise NoExtremalFound(
            f"no extremal reaches r_E={curve.r_e} with n <= {config.n_max}; "
            "r_E may sit outside the reachable regime or n_max is too small")
    best = min(candidates, key=lambda sol: (sol.total_time, sol.family.n,
                                            0 if sol.family.branch > 0 else 1,
                                            sol.root_index))
    if best.family.n == config.n_max and config.n_max > 0:
        warnings.warn(f"minimal extremal uses n = n_max = {config.n_max}; "
                      "increase n_max to rule out faster candidates", stacklevel=2)
    candidates.sort(key=lambda sol: (sol.family.n, 0 if sol.family.branch > 0 else 1,
                                     sol.root_index))
    return best, candidates


@dataclass(frozen=True)
class FixedEndpointSolution:
    """Root of the degenerate problem whose target is a single axis point."""

    family: ExtremalFamily
    s: float
    total_time: float
    tau_first: float
    tau_x: float
    tau_y: float
    tau_final: float
    final_point: PhasePoint
    root_index: int = 0


def find_fixed_endpoint_roots(family: ExtremalFamily, bounds: ControlBounds,
                              config: SolverConfig = SolverConfig(),
                              x1_target: float | None = None) -> list[float]:
    """Roots s for reaching the point (x1_target, 0); defaults to (gamma, 0)."""
    target = bounds.gamma if x1_target is None else x1_target
    grid = np.linspace(0.0, bounds.s_max, config.scan_points + 1)[1:]
    vals = _fixed_endpoint_parts(grid, family.n, family.branch, bounds, target)
    fn = lambda x: _fixed_endpoint_parts(x, family.n, family.branch, bounds, target)
    return _dedupe(_bracket_roots(vals, grid, fn, config.root_tol * bounds.s_max))


def build_fixed_endpoint_solution(s: float, family: ExtremalFamily, bounds: ControlBounds,
                                  x1_target: float | None = None,
                                  residual_tol: float = 1e-7,
                                  root_index: int = 0) -> FixedEndpointSolution:
    """Times for a fixed-endpoint root, validated by propagating to the target point."""
    target = bounds.gamma if x1_target is None else x1_target
    u2 = bounds.u2
    c = u2 * target ** 2 + 1.0 / target ** 2
    _, k_last = switch_x1sq_chain(s, family, bounds)
    y_last = (2.0 * u2 * k_last - c) / math.sqrt(c * c - 4.0 * u2)
    t_first = first_arc_time(s, family.branch, bounds)
    t_x = interswitch_time_x(s, bounds)
    t_y = interswitch_time_y(s, bounds)
    t_final = math.acos(min(1.0, max(-1.0, y_last))) / (2.0 * math.sqrt(u2))
    total = t_first + family.n * (t_x + t_y) + t_final

    w1, w2 = np.longdouble(START.x1), np.longdouble(START.x2)
    arcs = [(bounds.u1, t_first)] + [(u2, t_y), (bounds.u1, t_x)] * family.n + [(u2, t_final)]
    for u, dt in arcs:
        w1, w2 = _propagate_arc_extended(w1, w2, np.longdouble(u), np.longdouble(dt))
    p = PhasePoint(float(w1), float(w2))
    err = math.hypot(p.x1 - target, p.x2)
    if err > residual_tol * max(1.0, target):
        raise ValidationFailure(
            f"fixed-endpoint synthesis misses ({target}, 0) by {err:.3e} "
            f"(family n={family.n} branch={family.sign_label}, s={s!r})")
    return FixedEndpointSolution(family=family, s=s, total_time=total, tau_first=t_first,
                                 tau_x=t_x, tau_y=t_y, tau_final=t_final, final_point=p,
                                 root_index=root_index)


def minimize_to_point(bounds: ControlBounds, config: SolverConfig = SolverConfig(),
                      x1_target: float | None = None,
                      ) -> tuple[FixedEndpointSolution, list[FixedEndpointSolution]]:
    """Minimal time to reach (x1_target, 0), plus the full candidate list."""
    candidates: list[FixedEndpointSolution] = []
    for n in range(config.n_max + 1):
        for branch in (1, -1):
            family = ExtremalFamily(n, branch)
            roots = find_fixed_endpoint_roots(family, bounds, config, x1_target)
            sols = [build_fixed_endpoint_solution(s, family, bounds, x1_target)
                    for s in roots]
            sols.sort(key=lambda sol: sol.total_time)
            for k, sol in enumerate(sols, start=1):
                candidates.append(replace(sol, root_index=k))
    if not candidates:
        raise NoExtremalFound(f"no extremal reaches the fixed endpoint with n <= {config.n_max}")
    best = min(candidates, key=lambda sol: (sol.total_time, sol.family.n,
                                            0 if sol.family.branch > 0 else 1,
                                            sol.root_index))
    candidates.sort(key=lambda sol: (sol.family.n, 0 if sol.family.branch > 0 else 1,
                                     sol.root_index))
    return best, candidates
