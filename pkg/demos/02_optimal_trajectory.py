"""Plot the minimum-time trajectory in the phase plane.

Reproduces the geometry of the optimal transfer: alternating slow (u = u1)
and fast (u = u2) arcs from the equilibrium start (1, 0) down to the
fixed-energy target curve, which hugs the x1-axis for deep targets.  Writes
optimal_trajectory.png and optimal_trajectory.csv next to this script.
"""

import csv
import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import minctrl as mc
from minctrl.dynamics import propagate_arc

gamma = 10.0
r_e = 90.8059
here = pathlib.Path(__file__).resolve().parent

bounds = mc.ControlBounds(gamma)
curve = mc.TargetCurve.for_bounds(r_e, bounds)
best, _ = mc.minimize(curve, bounds)
print(f"optimal protocol {best.label}: T = {best.total_time:.5f}, "
      f"{best.family.switchings} switchings")

# dense samples per arc, colored by control value
fig, ax = plt.subplots(figsize=(7, 5))
p = mc.START
rows = [(0.0, p.x1, p.x2, 1.0)]
t_acc = 0.0
for u, dt in best.schedule.segments:
    ts = np.linspace(0.0, dt, 400)
    xs = [propagate_arc(p, u, float(t)) for t in ts]
    style = dict(color="tab:blue", ls="-") if u < 0.5 else dict(color="tab:red", ls="--")
    ax.plot([q.x1 for q in xs], [q.x2 for q in xs], lw=1.6, **style)
    rows += [(t_acc + float(t), q.x1, q.x2, u) for t, q in zip(ts[1:], xs[1:])]
    p = propagate_arc(p, u, dt)
    t_acc += dt

# target curve: x2^2 + u1 x1^2 + 1/x1^2 = 2/r_E
x1_grid = np.linspace(0.2, 12.0, 2000)
mu_sq = 2.0 / r_e - bounds.u1 * x1_grid ** 2 - 1.0 / x1_grid ** 2
ok = mu_sq >= 0.0
ax.plot(x1_grid[ok], np.sqrt(mu_sq[ok]), "k-", lw=1.0, label="target curve")
ax.plot(x1_grid[ok], -np.sqrt(mu_sq[ok]), "k-", lw=1.0)

ax.plot([1.0], [0.0], "ko", ms=5)
ax.plot([best.final_point.x1], [best.final_point.x2], "k*", ms=10)
for sp in best.switch_points:
    ax.plot([sp.x1], [sp.x2], "ks", ms=4)
ax.set_xlabel("x1 (scaled width)")
ax.set_ylabel("x2 (scaled expansion rate)")
ax.set_title(f"minimum-time transfer, gamma={gamma}, T={best.total_time:.5f}")
ax.legend(["slow arcs (u=u1)", "fast arcs (u=u2)"], loc="upper left")
fig.tight_layout()
fig.savefig(here / "optimal_trajectory.png", dpi=150)
print(f"wrote {here / 'optimal_trajectory.png'}")

with open(here / "optimal_trajectory.csv", "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(("t", "x1", "x2", "u"))
    writer.writerows(rows)
print(f"wrote {here / 'optimal_trajectory.csv'} ({len(rows)} samples)")
