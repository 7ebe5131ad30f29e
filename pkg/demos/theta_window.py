"""Range of planar angles over which a fixed witness detects |D^{N/2}_N>.

The window shrinks roughly like 1/sqrt(N).
"""
import numpy as np

from symwitness import WitnessParams, dicke, theta_window

params = WitnessParams(-1, -1.13, 1.14)
widths = {}
for N in (100, 400, 1000):
    lo, hi = theta_window(dicke(N, N // 2), params).widest
    widths[N] = hi - lo
    print(f"N={N:5d}  detected for {lo:.4f} < theta < {hi:.5f}")
print(f"width ratio N=100/N=1000: {widths[100] / widths[1000]:.3f} (sqrt(10) = {np.sqrt(10):.3f})")

# the opposite orientation of the same coefficients detects nothing
print("(1, 1.13, -1.14):", theta_window(dicke(100, 50), -params).intervals)
