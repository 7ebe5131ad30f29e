"""Thermal states of the isotropic LMG model with N=4, h=0.01.

The ground state is |D^2_4>; heating washes the correlations out and the
witness stops detecting at the critical temperature.
"""
import numpy as np

from symwitness import lmg

p = lmg.LMGParams(4, 0.01)
rows = lmg.thermal_scan(p, np.linspace(0.0, 1.5, 16))
print("   T     g(T)     S00      S01      S11")
for T, g, s00, s01, s11 in rows:
    print(f"{T:5.2f} {g: .4f} {s00: 8.4f} {s01: 8.4f} {s11: 8.4f}")
print(f"T_crit = {lmg.critical_temperature(p):.4f}")
