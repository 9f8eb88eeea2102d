"""Bootstrap confidence band for the difference curve.

Each replicate resamples A and B with replacement, re-pools and re-ranks
them, and evaluates ``G_{Y_A}`` and ``G_{Y_B}`` on the original knots
``j / 2n``. Pointwise percentile intervals at level ``sqrt(1 - alpha)``
are formed for each variable, so that the two hold jointly at ``1 - alpha``,
and combined as ``[lo_A - hi_B, hi_A - lo_B]``. The band is then clamped to
the feasible triangle ``|diff(x)| <= min(2x, 2 - 2x)``.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .estimators import as_pair
from .quantile_rv import (DiffCurve, build_quantile_pair, c_d_from_diff, c_p_from_diff,
                          knots_batch)

DEFAULT_RESAMPLES = 1000


@dataclass(frozen=True)
class ConfidenceBand:
    """Pointwise band around the difference curve at confidence ``1 - alpha``.

    ``diff`` is the curve of the observed samples on the same grid.
    """

    alpha: float
    x: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    diff: np.ndarray
    resamples: int
    seed: int

    @property
    def n(self):
        return (self.x.size - 1) // 2

    def curve(self, which="diff"):
        return DiffCurve(self.x, {"diff": self.diff, "lower": self.lower,
                                  "upper": self.upper}[which])


def feasible_limit(x):
    return np.minimum(2 * x, 2 - 2 * x)


def _replicate_indices(n, resamples, seed, start, stop):
    ia = np.empty((stop - start, n), dtype=np.int64)
    ib = np.empty((stop - start, n), dtype=np.int64)
    for k, r in enumerate(range(start, stop)):
        rng = np.random.default_rng([seed, r])
        ia[k] = rng.integers(0, n, n)
        ib[k] = rng.integers(0, n, n)
    return ia, ib


def bootstrap_band(a, b, alpha=0.05, resamples=DEFAULT_RESAMPLES, seed=42):
    """Bootstrap band for ``diff`` from samples ``a`` and ``b``.

    Replicate ``r`` draws from ``np.random.default_rng([seed, r])``, so the
    band is identical for identical arguments.
    """
    a, b = as_pair(a, b)
    if not 0 < alpha < 1:
        raise InputError(f"alpha must lie in (0, 1), got {alpha!r}")
    if resamples < 100:
        raise InputError(f"at least 100 resamples are required, got {resamples}")
    n = a.size
    q = build_quantile_pair(a, b)
    x = q.grid

    ga = np.empty((resamples, 2 * n + 1))
    step = max(1, 200_000 // n)
    for start in range(0, resamples, step):
        stop = min(resamples, start + step)
        ia, ib = _replicate_indices(n, resamples, seed, start, stop)
        ga[start:stop] = knots_batch(a[ia], b[ib])
    gb = 2.0 * x - ga

    level = math.sqrt(1.0 - alpha)
    probs = [(1 - level) / 2, (1 + level) / 2]
    lo_a, hi_a = np.quantile(ga, probs, axis=0)
    lo_b, hi_b = np.quantile(gb, probs, axis=0)
    lim = feasible_limit(x)
    lower = np.clip(lo_a - hi_b, -lim, lim)
    upper = np.clip(hi_a - lo_b, -lim, lim)
    lower[[0, -1]] = 0.0
    upper[[0, -1]] = 0.0
    return ConfidenceBand(
        alpha=float(alpha),
        x=x,
        lower=lower,
        upper=upper,
        diff=q.knots_diff.copy(),
        resamples=int(resamples),
        seed=seed,
    )


def band_bounds(band):
    """``(c_p_low, c_p_high, c_d_low, c_d_high)`` from the band edges.

    Each interval is widened if needed to contain the point estimate of the
    observed curve, and clipped to [0, 1].
    """
    point = band.curve("diff")
    out = []
    for f in (c_p_from_diff, c_d_from_diff):
        lo = f(band.curve("lower"))
        hi = f(band.curve("upper"))
        p = f(point)
        out += [min(max(min(lo, p), 0.0), 1.0), min(max(max(hi, p), 0.0), 1.0)]
    return tuple(out)


def write_band_csv(band, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "lower", "diff", "upper"])
        for row in zip(band.x, band.lower, band.diff, band.upper):
            w.writerow([repr(float(v)) for v in row])
