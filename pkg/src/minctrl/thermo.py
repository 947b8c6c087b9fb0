"""Thermodynamic applications of the minimum-time solver.

Maps an Otto-cycle refrigerator (frequencies omega_c < omega_h, reservoir
temperatures Tc < Th) onto the dimensionless control problem: temperatures are
expressed in units of hbar*omega_h/(2 kB), energies in units of
hbar*omega_h/2, and times in units of 1/omega_h, which removes all physical
constants from the interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import ControlBounds, TargetCurve
from .solver import ExtremalSolution, SolverConfig, minimize

ZERO = "zero"              # sudden quench already keeps the machine cooling
CRITICAL = "critical"      # a finite minimal expansion time exists
INFEASIBLE = "infeasible"  # no admissible driving keeps the cold heat uptake >= 0


def _coth(x: float) -> float:
    # 1/tanh is overflow-free: tanh saturates to 1 for large x and ~x for small x
    return 1.0 / math.tanh(x)


@dataclass(frozen=True)
class OttoSpec:
    """Refrigerator data: omega_ratio = omega_h/omega_c > 1, temperatures Tc < Th."""

    omega_ratio: float
    tc: float
    th: float

    def __post_init__(self):
        if not (self.omega_ratio > 1.0):
            raise ValueError(f"omega_ratio must be > 1, got {self.omega_ratio}")
        if not (0.0 < self.tc < self.th):
            raise ValueError(f"need 0 < tc < th, got tc={self.tc}, th={self.th}")

    @property
    def gamma(self) -> float:
        return math.sqrt(self.omega_ratio)


@dataclass(frozen=True)
class CycleEnergies:
    """Average energies (units hbar*omega_h/2) at the cycle corners that matter here."""

    ea: float      # cold equilibrium at omega_c, Tc
    ec: float      # hot equilibrium at omega_h, Th
    ed_min: float  # slow-expansion floor ec/omega_ratio
    ed_sc: float   # sudden-quench expansion energy


@dataclass(frozen=True)
class AvailabilityQuery:
    """Dual problem input: gamma and the target energy fraction E_D/E_C = 1/r_E."""

    gamma: float
    ed_ratio: float

    def __post_init__(self):
        if self.gamma <= 1.0:
            raise ValueError(f"gamma must be > 1, got {self.gamma}")
        if self.ed_ratio <= 0.0:
            raise ValueError(f"ed_ratio must be positive, got {self.ed_ratio}")


@dataclass(frozen=True)
class RefrigeratorResult:
    classification: str
    energies: CycleEnergies
    r_e: float | None
    min_time: float
    solution: ExtremalSolution | None


def equilibrium_energy(omega_rel: float, temperature: float) -> float:
    """Thermal average energy omega_rel*coth(omega_rel/T), in hbar*omega_h/2 units."""
    if omega_rel <= 0.0 or temperature <= 0.0:
        raise ValueError(f"omega_rel and temperature must be positive, "
                         f"got ({omega_rel}, {temperature})")
    return omega_rel * _coth(omega_rel / temperature)


def cycle_energies(spec: OttoSpec) -> CycleEnergies:
    ea = equilibrium_energy(1.0 / spec.omega_ratio, spec.tc)
    ec = equilibrium_energy(1.0, spec.th)
    return CycleEnergies(
        ea=ea,
        ec=ec,
        ed_min=ec / spec.omega_ratio,
        ed_sc=(1.0 + spec.omega_ratio ** -2) * 0.5 * ec,
    )


def refrigerator_min_driving_time(spec: OttoSpec,
                                  config: SolverConfig = SolverConfig()) -> RefrigeratorResult:
    """Minimum expansion-step duration keeping the cold heat uptake nonnegative.

    Zero: even a sudden quench leaves E_D below the cold equilibrium energy.
    Infeasible: not even the slow floor E_D,min gets there.
    Critical: the threshold E_D = E_A is reachable; the minimal driving time is
    the solver minimum for r_E = E_C/E_A, in units of 1/omega_h.
    """
    en = cycle_energies(spec)
    if en.ed_sc < en.ea:
        return RefrigeratorResult(ZERO, en, None, 0.0, None)
    if en.ea <= en.ed_min:
        return RefrigeratorResult(INFEASIBLE, en, None, math.inf, None)
    r_e = en.ec / en.ea
    bounds = ControlBounds(spec.gamma)
    lo, _ = bounds.re_interval()
    if r_e <= lo:
        # ed_sc == ea boundary: the quench itself is the minimal driving
        return RefrigeratorResult(CRITICAL, en, r_e, 0.0, None)
    best, _ = minimize(TargetCurve.for_bounds(r_e, bounds), bounds, config)
    return RefrigeratorResult(CRITICAL, en, r_e, best.total_time, best)


def availability_min_time(query: AvailabilityQuery,
                          config: SolverConfig = SolverConfig()) -> ExtremalSolution:
    """Minimal time to push the average energy down to E_D = ed_ratio * E_C."""
    bounds = ControlBounds(query.gamma)
    curve = TargetCurve.for_bounds(1.0 / query.ed_ratio, bounds)
    best, _ = minimize(curve, bounds, config)
    return best


def small_s_equal_times(s: float, bounds: ControlBounds) -> tuple[float, float]:
    """Leading-order first/last arc durations for s -> 0: both sqrt(s)/(1 - u1).

    In the short-process limit the time is split equally between the opening
    u1 arc and the closing u2 arc.
    """
    if s <= 0.0:
        raise ValueError(f"s must be positive, got {s}")
    t = math.sqrt(s) / (1.0 - bounds.u1)
    return t, t


def quench_frequency_for_energy(r_e: float, bounds: ControlBounds) -> float:
    """Frequency ratio omega'_f/omega_0 whose sudden quench leaves energy E0/r_E.

    Valid for targets reachable instantaneously, i.e. r_E between 1 (no quench)
    and the full-quench bound 2 gamma^4/(gamma^4 + 1); both endpoints included.
    """
    hi = 2.0 / bounds.c1
    if not (1.0 <= r_e <= hi):
        raise ValueError(f"r_E={r_e} outside the sudden-quench range [1, {hi:.9g}]")
    u_quench = 2.0 / r_e - 1.0
    return math.sqrt(u_quench)
