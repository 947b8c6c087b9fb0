"""Enumerate every candidate bang-bang extremal for one target and rank them.

Target: gamma = 10 with the final-energy curve chosen to pass through the
phase-plane point (8, 0).  The solver scans all switching counts and both
first-switch branches, solves each family's transcendental equation, and
prints the resulting time table; the shortest entry is the minimum-time
protocol.
"""

import minctrl as mc

gamma = 10.0
gbar = 8.0

bounds = mc.ControlBounds(gamma)
r_e = 2.0 * gbar ** 2 / (1.0 + (gbar / gamma) ** 4)
curve = mc.TargetCurve.for_bounds(r_e, bounds)

best, table = mc.minimize(curve, bounds)

print(f"gamma = {gamma}, r_E = {r_e:.4f}  (curve through ({gbar}, 0))")
print(f"{'label':>12} {'switchings':>10} {'s':>12} {'time':>10}  note")
for sol in table:
    note = "tangential arrival" if sol.tangential else ""
    star = "  <== minimum" if sol is best else ""
    print(f"{sol.label:>12} {sol.family.switchings:>10d} {sol.s:>12.8f} "
          f"{sol.total_time:>10.5f}  {note}{star}")

print()
print(f"minimum time: {best.total_time:.5f} (in units of the initial angular frequency)")
print("schedule (control value, duration):")
for u, dt in best.schedule.segments:
    print(f"  u = {u:<10g} dt = {dt:.6f}")
print(f"with instantaneous jumps from u={best.schedule.u_before} at t=0 "
      f"and to u={best.schedule.u_after} at t=T")
print(f"final point: (x1, x2) = ({best.final_point.x1:.6f}, {best.final_point.x2:.6f})")
