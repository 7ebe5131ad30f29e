"""Central Dicke states under the planar witness.

The most negative expectation alternates between even and odd N and both
branches approach -1/2.
"""
import numpy as np

from symwitness import dicke_sweep

recs = dicke_sweep(np.arange(3, 31))
print(" N   min <A>")
for r in recs:
    print(f"{int(r.value):2d}  {r.min_expectation: .5f}")

# closed forms that the sweep reproduces
for r in recs:
    N = int(r.value)
    exact = -N / (2 * (N - 1)) if N % 2 == 0 else -(N - 1) / (2 * N)
    assert abs(r.min_expectation - exact) < 1e-6
print("even N: -N/(2(N-1)),  odd N: -(N-1)/(2N)")
