"""Finite-time availability: how much work a short expansion can extract.

Fixing the reachable final energy E_D (as a fraction of the hot equilibrium
energy E_C) and solving for the minimum process duration yields the
work-versus-time frontier W(T) = E_C - E_D(T).  Sweeping the energy fraction
traces that frontier without any trajectory optimization in the loop.
Writes availability_frontier.png next to this script.
"""

import pathlib
import warnings

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import minctrl as mc
from minctrl.solver import SolverConfig

gamma = 10.0
here = pathlib.Path(__file__).resolve().parent

# E_D/E_C from just under the sudden-quench value down toward the slow floor
lo = 1.0 / (gamma ** 2)                                   # deepest reachable fraction
hi = (gamma ** 4 + 1.0) / (2.0 * gamma ** 4)              # sudden-quench fraction
ratios = np.linspace(hi * 0.999, lo * 1.02, 25)

times, works, labels = [], [], []
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    for ed in ratios:
        best = mc.availability_min_time(mc.AvailabilityQuery(gamma, float(ed)),
                                        SolverConfig(n_max=4))
        times.append(best.total_time)
        works.append(1.0 - float(ed))
        labels.append(best.label)

print(f"{'E_D/E_C':>10} {'min time':>10} {'W/E_C':>8}  protocol")
for ed, t, w, lab in zip(ratios, times, works, labels):
    print(f"{ed:>10.6f} {t:>10.5f} {w:>8.5f}  {lab}")

fig, ax = plt.subplots(figsize=(6.5, 4.5))
ax.plot(times, works, "o-", ms=4)
ax.set_xlabel("minimum process duration (units 1/omega_h)")
ax.set_ylabel("extractable work fraction W/E_C")
ax.set_title(f"finite-time availability frontier, gamma = {gamma}")
ax.grid(alpha=0.3)
fig.tight_layout()
fig.savefig(here / "availability_frontier.png", dpi=150)
print(f"wrote {here / 'availability_frontier.png'}")
