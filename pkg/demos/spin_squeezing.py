"""One-axis-twisted states: scanning the twisting strength chi.

General measurement directions detect these states; the planar family
with a z-axis measurement does not.
"""
import numpy as np

from symwitness import chi_scan, minimize_witness, spin_squeezed

for N, grid in ((3, np.linspace(0.7, 0.95, 26)), (100, np.linspace(0.02, 0.04, 11))):
    recs = chi_scan(N, grid, "general")
    best = min(recs, key=lambda r: r.min_expectation)
    print(f"N={N:4d}  best chi={best.value:.4f}  min <A>={best.min_expectation:.4f}")

for N in (4, 6):
    vals = [minimize_witness(spin_squeezed(N, c), "planar").best_value for c in np.linspace(0, np.pi, 13)]
    print(f"N={N} planar minimum over chi: {min(vals):.2e}")
