"""Dimensionless phase-plane model of the driven parametric oscillator.

The oscillator width b obeys the Ermakov equation b'' + u(t) b = 1/b^3 after
rescaling time by the initial frequency and setting the initial energy to 1.
State is tracked either as the phase point (x1, x2) = (b, b') or as the
second-moment triple (z1, z2, z3).  The control u = (omega/omega_0)^2 is
confined to [u1, u2] with u1 = 1/gamma^4 and u2 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ControlBounds:
    """Admissible control interval, parametrized by gamma = sqrt(omega_0/omega_f) > 1."""

    gamma: float

    def __post_init__(self):
        if not (self.gamma > 1.0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be finite and > 1, got {self.gamma}")

    @property
    def u1(self) -> float:
        return self.gamma ** -4

    @property
    def u2(self) -> float:
        return 1.0

    @property
    def c1(self) -> float:
        # conserved constant of the u = u1 arc through the start point (1, 0)
        return 1.0 + self.u1

    @property
    def s_max(self) -> float:
        # upper end of the admissible switching-ratio interval
        return 0.25 * (1.0 - self.u1) ** 2

    def re_interval(self) -> tuple[float, float]:
        """Open interval of reachable energy ratios r_E = E0/Ef for curve targets."""
        return 2.0 / self.c1, self.gamma ** 2


@dataclass(frozen=True)
class PhasePoint:
    """Point (x1, x2) of the reduced phase plane; x1 > 0 is the invariant domain."""

    x1: float
    x2: float

    def __post_init__(self):
        if not (self.x1 > 0.0 and math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise ValueError(f"phase point requires finite x1 > 0, got ({self.x1}, {self.x2})")


START = PhasePoint(1.0, 0.0)


@dataclass(frozen=True)
class ZState:
    """Second moments (z1, z2, z3); z1 z2 - z3^2/4 = 1 for states reachable from equilibrium."""

    z1: float
    z2: float
    z3: float

    def __post_init__(self):
        if not (self.z1 > 0.0 and self.z2 > 0.0):
            raise ValueError(f"z1, z2 must be positive, got ({self.z1}, {self.z2})")

    @property
    def casimir(self) -> float:
        return self.z1 * self.z2 - 0.25 * self.z3 ** 2


@dataclass(frozen=True)
class ControlSchedule:
    """Piecewise-constant control: ordered (u, duration) segments.

    u_before / u_after record the instantaneous boundary jumps of the physical
    protocol (the control is pinned to u2 before t = 0 and to u1 after t = T);
    they carry no duration.
    """

    segments: tuple[tuple[float, float], ...]
    u_before: float | None = None
    u_after: float | None = None

    def __post_init__(self):
        for u, dt in self.segments:
            if u <= 0.0 or dt < 0.0:
                raise ValueError(f"segment (u={u}, dt={dt}) must have u > 0 and dt >= 0")

    @classmethod
    def from_pairs(cls, pairs, u_before=None, u_after=None) -> "ControlSchedule":
        return cls(tuple((float(u), float(dt)) for u, dt in pairs), u_before, u_after)

    @property
    def total_duration(self) -> float:
        return sum(dt for _, dt in self.segments)

    def control_at(self, t: float) -> float:
        """Control value at time t; boundary jumps win at t <= 0 and t >= T."""
        if self.u_before is not None and t <= 0.0:
            return self.u_before
        if self.u_after is not None and t >= self.total_duration:
            return self.u_after
        acc = 0.0
        for u, dt in self.segments:
            acc += dt
            if t < acc:
                return u
        return self.segments[-1][0]


@dataclass(frozen=True)
class TargetCurve:
    """Terminal locus x2^2 + u1 x1^2 + 1/x1^2 = 2/r_E of fixed final energy Ef = E0/r_E."""

    r_e: float
    u1: float

    def __post_init__(self):
        lo = 2.0 / (1.0 + self.u1)
        hi = self.u1 ** -0.5
        if not (lo < self.r_e < hi):
            raise ValueError(
                f"r_E={self.r_e} outside the admissible interval ({lo:.9g}, {hi:.9g}) "
                f"(sudden-quench bound 2*gamma^4/(gamma^4+1) to gamma^2)"
            )

    @classmethod
    def for_bounds(cls, r_e: float, bounds: ControlBounds) -> "TargetCurve":
        return cls(float(r_e), bounds.u1)


def energy_ratio(p: PhasePoint, u: float) -> float:
    """Average energy E/E0 of the state p when the instantaneous control is u."""
    if u <= 0.0:
        raise ValueError(f"control must be positive, got u={u}")
    return 0.5 * (u * p.x1 ** 2 + p.x2 ** 2 + 1.0 / p.x1 ** 2)


def curve_residual(p: PhasePoint, curve: TargetCurve) -> float:
    """Signed distance-like residual; zero iff p lies on the target curve."""
    return p.x2 ** 2 + curve.u1 * p.x1 ** 2 + 1.0 / p.x1 ** 2 - 2.0 / curve.r_e


def arc_constant(p: PhasePoint, u: float) -> float:
    """Conserved quantity x2^2 + u x1^2 + 1/x1^2 of the constant-u flow."""
    return p.x2 ** 2 + u * p.x1 ** 2 + 1.0 / p.x1 ** 2

# Relative discriminant threshold below which a constant-u arc is treated as
# sitting at its fixed point x1 = u^(-1/4), x2 = 0.
_DEGENERATE_REL = 1e-15


def propagate_arc(p: PhasePoint, u: float, dt: float) -> PhasePoint:
    """Exact state after time dt under constant control u.

    x1^2(t) oscillates harmonically at angular rate 2 sqrt(u) between the
    turning points of the arc constant c, so the flow reduces to advancing a
    single phase angle; both x1 and the sign of x2 round-trip exactly.
    """
    if u <= 0.0:
        raise ValueError(f"control must be positive, got u={u}")
    if dt < 0.0:
        raise ValueError(f"duration must be nonnegative, got dt={dt}")
    if dt == 0.0:
        return p
    c = arc_constant(p, u)
    disc = c * c - 4.0 * u
    if disc <= _DEGENERATE_REL * c * c:
        return PhasePoint(u ** -0.25, 0.0)
    sq = math.sqrt(disc)
    su = math.sqrt(u)
    theta = math.atan2(-2.0 * su * p.x1 * p.x2, 2.0 * u * p.x1 ** 2 - c) + 2.0 * su * dt
    x1_sq = (c + sq * math.cos(theta)) / (2.0 * u)
    x1 = math.sqrt(x1_sq)
    x2 = -sq * math.sin(theta) / (2.0 * su * x1)
    return PhasePoint(x1, x2)


def propagate_schedule(p: PhasePoint, schedule: ControlSchedule) -> PhasePoint:
    """Compose exact arc propagation over all schedule segments."""
    for u, dt in schedule.segments:
        p = propagate_arc(p, u, dt)
    return p


def x_to_z(p: PhasePoint) -> ZState:
    """Second moments of the phase point: z1 = x1^2, z2 = x2^2 + 1/x1^2, z3 = 2 x1 x2."""
    return ZState(p.x1 ** 2, p.x2 ** 2 + 1.0 / p.x1 ** 2, 2.0 * p.x1 * p.x2)
