"""Named example distributions used in tests, demos and the CLI fixtures."""

from .analytic_rv import gaussian, mixture, uniform

# Case 1: two two-component mixtures whose CDFs cross repeatedly.
CASE1_A = mixture([(0.489, gaussian(0.05, 0.00125)), (0.511, gaussian(0.07, 0.00125))])
CASE1_B = mixture([(0.511, gaussian(0.06, 0.00125)), (0.489, gaussian(0.08, 0.00125))])

# Case 2: B has a small mass far to the left; otherwise A takes lower values.
CASE2_A = gaussian(0.211325, 0.002)
CASE2_B = mixture([(0.925, gaussian(0.21875, 0.002)), (0.075, gaussian(0.04875, 0.002))])

# Case 3: the uniform analogue of case 2.
CASE3_A = uniform(0.2, 0.21)
CASE3_B = mixture([(0.925, uniform(0.19, 0.2)), (0.075, uniform(0.04, 0.05))])

# Motivating pair where the means mislead.
MOTIVATING_A = mixture([(0.925, gaussian(0.210325, 0.002)), (0.075, gaussian(0.010325, 0.025))])
MOTIVATING_B = mixture([(0.975, gaussian(0.01875, 0.002)), (0.025, gaussian(0.06875, 0.001))])

# A dominates B1, B dominates A, yet B differs from B1 by a 0.1-weight part.
FLIP_A = uniform(0.0, 1.0)
FLIP_B1 = uniform(0.1, 1.0)
FLIP_B2 = uniform(-0.5, 0.0)
FLIP_TAU = 0.1
FLIP_B = mixture([(1 - FLIP_TAU, FLIP_B1), (FLIP_TAU, FLIP_B2)])
