"""Minimum-time bang-bang frequency control of the quantum parametric oscillator.

Library layout:

- ``dynamics``: phase-plane state types, exact constant-control propagation.
- ``solver``: closed-form extremal families, transcendental root enumeration,
  globally minimal schedules for curve and fixed-endpoint targets.
- ``oracle``: independent RK4 integration and brute-force schedule search.
- ``thermo``: Otto-refrigerator minimum driving time and finite-time
  availability queries.
- ``cli``: the ``minctrl`` command.
"""

from .dynamics import (
    START,
    ControlBounds,
    ControlSchedule,
    PhasePoint,
    TargetCurve,
    ZState,
    arc_constant,
    curve_residual,
    energy_ratio,
    propagate_arc,
    propagate_schedule,
    x_to_z,
)
from .solver import (
    ExtremalFamily,
    ExtremalSolution,
    FixedEndpointSolution,
    InfeasibleRoot,
    NoExtremalFound,
    SolverConfig,
    ValidationFailure,
    build_solution,
    find_roots,
    minimize,
    minimize_to_point,
)
from .oracle import (
    GridSearchSpec,
    IntegratorConfig,
    NotReached,
    StepInstability,
    grid_search_min_time,
    integrate_x,
    integrate_z,
    verify_solution,
)
from .thermo import (
    AvailabilityQuery,
    CycleEnergies,
    OttoSpec,
    availability_min_time,
    cycle_energies,
    equilibrium_energy,
    quench_frequency_for_energy,
    refrigerator_min_driving_time,
    small_s_equal_times,
)

__version__ = "0.1.0"
