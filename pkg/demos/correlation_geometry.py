"""Quantum correlation region against the classical polytope.

For N=4 the witness region sits inside the local polytope at every angle
tried; for N=3 at theta=pi/3 it pokes out, i.e. some symmetric states
violate a Bell inequality built from the same correlators.
"""
import numpy as np

from symwitness import MeasurementSettings, geometry

for N, theta in ((4, np.pi / 6), (4, np.pi / 3), (4, 4 * np.pi / 9), (3, np.pi / 3), (5, np.pi / 3)):
    rep = geometry.support_compare(N, MeasurementSettings.planar(theta), 2000)
    print(f"N={N} theta={theta:.3f}: {rep.protruding.size:4d} protruding directions, "
          f"max relative excess {rep.max_relative_excess:.3f}")

print("polytope vertices for N=2:")
print(geometry.classical_polytope_vertices(2).vertices)
