"""
From two small samples to the difference curve
==============================================

Pooling both samples and ranking them maps every run to bins of width
1/2n on [0, 1]. A value seen in both samples owns a block of bins shared
in proportion to its multiplicities, so the two densities always sum to 2.
"""

import numpy as np

from stochdom.estimators import estimate_c_d, estimate_c_p, psi_table
from stochdom.oracle import brute_c_p
from stochdom.quantile_rv import build_quantile_pair, c_d_from_diff, c_p_from_diff, diff_curve

a = np.array([1.0, 2.0, 2.0, 5.0])
b = np.array([2.0, 3.0, 4.0, 4.0])

q = build_quantile_pair(a, b)
print("unique values ", q.values)
print("mult A / B    ", q.mult_a, q.mult_b)
print("density Y_A   ", q.density_a)
print("density Y_B   ", q.density_b)

d = diff_curve(q)
print("diff at knots ", d.values)

# Both estimators can be read off the curve: C_P from its area and C_D
# from the lengths where it is positive or negative.
print("C_P: ranks %.4f, pairs %.4f, area %.4f" % (
    estimate_c_p(a, b), brute_c_p(a, b), c_p_from_diff(d)))
print("C_D: table %.4f, curve %.4f" % (estimate_c_d(a, b), c_d_from_diff(d)))

t = psi_table(a, b)
print("psi per value ", t.psi)
