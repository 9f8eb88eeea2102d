"""
A small change that flips the dominance rate
=============================================

A is uniform on [0, 1] and B1 is uniform on [0.1, 1], so A dominates B1.
Mixing 10% of a low uniform part into B1 gives B, which then dominates A.
C_P moves by at most the mixing weight; C_D jumps from 1 to 0. KL is
infinite on both pairs because A has mass where B1 and B have none.
"""

import math

from stochdom.cases import FLIP_A, FLIP_B, FLIP_B1, FLIP_TAU
from stochdom.dominance_measures import MEASURES, classify, reference_measure

print("mixing weight tau = %g" % FLIP_TAU)
print("%-20s %10s %10s %10s" % ("measure", "C(A,B1)", "C(A,B)", "change"))
for m in MEASURES:
    v1 = reference_measure(FLIP_A, FLIP_B1, m).value
    v = reference_measure(FLIP_A, FLIP_B, m).value
    change = abs(v - v1) if math.isfinite(v - v1) else float("nan")
    print("%-20s %10.4f %10.4f %10s" % (m, v1, v, "-" if math.isnan(change) else "%.4f" % change))

print()
print("A vs B1:", classify(FLIP_A, FLIP_B1).value)
print("A vs B: ", classify(FLIP_A, FLIP_B).value)
