"""cos(omega)|D^2_N> + sin(omega)|GHZ_N> at N=200.

Neither component is detected alone, yet a band of superpositions is.
"""
import numpy as np

from symwitness import omega_scan, omega_window

N = 200
grid = np.linspace(np.pi / 2, np.pi, 19)
recs = omega_scan(N, grid)
for r in recs[::2]:
    print(f"omega={r.value:.3f}  min <A>={r.min_expectation: .4f}")
best = min(recs, key=lambda r: r.min_expectation)
print(f"minimum {best.min_expectation:.4f} at omega={best.value:.3f}")
print("negative for omega in", omega_window(N, grid, records=recs).widest)
