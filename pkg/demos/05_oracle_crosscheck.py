"""Validate the closed-form solver against brute force, end to end.

Two independent routes must agree: fixed-step RK4 replaying the analytic
schedule has to land on the target curve, and an exhaustive lattice search
over bang-bang switching times must never beat the analytic minimum (while
coming close from above).
"""

import minctrl as mc

gamma = 10.0
bounds = mc.ControlBounds(gamma)

for r_e, grid_spec in [
    (2.0003, mc.GridSearchSpec(n_switchings=1, per_arc_grid=400, time_horizon=0.05)),
    (90.8059, mc.GridSearchSpec(n_switchings=3, per_arc_grid=51, time_horizon=8.0)),
]:
    curve = mc.TargetCurve.for_bounds(r_e, bounds)
    best, _ = mc.minimize(curve, bounds)
    report = mc.verify_solution(best, curve, bounds)
    grid = mc.grid_search_min_time(curve, bounds, grid_spec)

    print(f"r_E = {r_e}: analytic minimum {best.total_time:.6f} ({best.label})")
    print(f"  RK4 replay:   endpoint residual {report.endpoint_residual_rk4:.2e}, "
          f"Casimir drift {report.casimir_drift:.2e}, "
          f"checks {'pass' if report.passed else 'FAIL: ' + '; '.join(report.failures)}")
    print(f"  grid search:  best of {grid.n_evaluated} lattice schedules "
          f"{grid.min_time:.6f} (excess {grid.min_time - best.total_time:+.2e})")
    assert grid.min_time >= best.total_time - 1e-9, "brute force beat the analytic minimum"
    print("  analytic minimum is a true lower envelope of the lattice")
    print()
