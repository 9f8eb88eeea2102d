"""Slow, independent reference computations.

These exist to check the fast paths: a literal pairwise ``C_P``, a dense
grid sum for ``C_P`` and ``C_D``, and a Monte-Carlo ``C_P``.
"""

import numpy as np

from .analytic_rv import sample
from .dominance_measures import EQUAL_BAND
from .errors import InputError
from .estimators import as_pair


def brute_c_p(a, b):
    """``sum_{i,k} sign(b_k - a_i) / 2n^2 + 1/2`` over all n^2 pairs."""
    a, b = as_pair(a, b)
    n = a.size
    total = 0
    for ai in a:
        total += int(np.sign(b - ai).sum())
    return total / (2 * n * n) + 0.5


def grid_dominance(a, b, gridsize=10**5):
    """``(C_P, C_D)`` by a midpoint Riemann-Stieltjes sum on the truncated
    joint support.

    Each cell weighs its midpoint by the exact CDF increment of the cell
    instead of ``pdf * h``, which keeps the sum second order at the jumps
    of uniform and beta densities.
    """
    if gridsize < 10**4:
        raise InputError(f"gridsize must be at least 1e4, got {gridsize}")
    lo = min(a.bounds()[0], b.bounds()[0])
    hi = max(a.bounds()[1], b.bounds()[1])
    edges = np.linspace(lo, hi, gridsize + 1)
    x = 0.5 * (edges[:-1] + edges[1:])
    wa, wb = np.diff(a.cdf(edges)), np.diff(b.cdf(edges))
    d = a.cdf(x) - b.cdf(x)
    c_p = float(np.sum(wb * a.cdf(x)))

    pos, neg = d > EQUAL_BAND, d < -EQUAL_BAND
    neq = pos | neg
    if not neq.any():
        return c_p, 0.5
    pa_neq, pb_neq = wa[neq].sum(), wb[neq].sum()
    up = wa[pos].sum() / pa_neq if pa_neq > 0 else 0.0
    down = wb[neg].sum() / pb_neq if pb_neq > 0 else 0.0
    return c_p, float(0.5 * (up - down) + 0.5)


def monte_carlo_c_p(a, b, draws=10**5, seed=0):
    """Fraction of independent pairs with ``x_a < x_b``."""
    if draws < 10**4:
        raise InputError(f"draws must be at least 1e4, got {draws}")
    xa = sample(a, draws, [seed, 0])
    xb = sample(b, draws, [seed, 1])
    return float(np.mean(xa < xb))
