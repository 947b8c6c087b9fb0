"""Minimum driving time for the expansion stroke of an Otto refrigerator.

The machine cools only while the expansion returns the oscillator to an
average energy at or below the cold-bath equilibrium value.  Depending on the
bath temperatures this needs no time at all (a sudden quench suffices), a
finite minimal stroke duration, or is impossible outright.  The worked point
uses a 100:1 frequency compression ratio.
"""

import numpy as np

import minctrl as mc

spec = mc.OttoSpec(omega_ratio=100.0, tc=0.01, th=0.8218)
result = mc.refrigerator_min_driving_time(spec)
en = result.energies

print("worked example: omega_h/omega_c = 100, Tc = 0.01, Th = 0.8218")
print(f"  E_A (cold equilibrium)   = {en.ea:.7f}")
print(f"  E_C (hot equilibrium)    = {en.ec:.7f}")
print(f"  E_D floor / sudden quench= {en.ed_min:.7f} / {en.ed_sc:.7f}")
print(f"  classification           = {result.classification}")
print(f"  r_E = E_C/E_A            = {result.r_e:.5f}")
print(f"  minimum driving time     = {result.min_time:.5f}  (units 1/omega_h)")
print(f"  optimal protocol         = {result.solution.label}, "
      f"{result.solution.family.switchings} switchings")

print()
print("sweeping the hot-bath temperature at fixed Tc = 0.01:")
print(f"{'Th':>8} {'classification':>15} {'min time':>10}")
for th in np.geomspace(0.02, 50.0, 12):
    res = mc.refrigerator_min_driving_time(mc.OttoSpec(100.0, 0.01, float(th)))
    t = "-" if res.classification == "infeasible" else f"{res.min_time:.5f}"
    print(f"{th:>8.4f} {res.classification:>15} {t:>10}")
