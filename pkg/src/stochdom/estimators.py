"""Empirical estimators of C_P and C_D from two equal-size samples.

All comparisons between observations use exact floating-point equality.
Internally everything is computed on integer counts, so the estimators are
exactly antisymmetric: ``estimate_c_p(a, b) + estimate_c_p(b, a) == 1``.

Example
-------
>>> estimate_c_p([1, 3], [2, 4])
0.75
>>> estimate_c_d([1, 2], [3, 4])
1.0
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class SampleSet:
    """Finite real observations, kept in the order given."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 1:
            raise InputError("a sample needs at least one observation")
        if not np.all(np.isfinite(v)):
            raise InputError("samples must not contain NaN or infinite values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def as_pair(a, b):
    """Validate two samples and return them as float arrays of equal size."""
    a = a.values if isinstance(a, SampleSet) else SampleSet(a).values
    b = b.values if isinstance(b, SampleSet) else SampleSet(b).values
    if a.size != b.size:
        raise InputError(f"samples must have equal size, got {a.size} and {b.size}")
    return a, b


def centered(num, den):
    """``0.5 + num / (2 den)`` rounded so that flipping the sign of ``num``
    gives exactly one minus the result."""
    v = 0.5 + 0.5 * (abs(num) / den)
    return float(v) if num >= 0 else float(1.0 - v)


def sign_sum(a, b):
    """Sum over all pairs of ``sign(b_k - a_i)``, as an exact integer."""
    sa = np.sort(a)
    below = np.searchsorted(sa, b, side="left")  # a_i < b_k
    above = sa.size - np.searchsorted(sa, b, side="right")  # a_i > b_k
    return int(below.sum()) - int(above.sum())


def estimate_c_p(a, b):
    """Empirical probability that an observation of A is below one of B.

    Equal to the normalized Mann-Whitney U statistic:
    ``sum_{i,k} sign(b_k - a_i) / (2 n^2) + 1/2``, computed in O(n log n).
    """
    a, b = as_pair(a, b)
    n = a.size
    return centered(sign_sum(a, b), n * n)


@dataclass(frozen=True)
class PsiTable:
    """Per-unique-value breakdown of the tie-aware C_D estimator.

    Attributes
    ----------
    n : sample size
    pooled : the 2n pooled observations, sorted
    values : unique pooled values ``c_d``
    mult_a, mult_b : multiplicities of each unique value in A and B
    cdf_a, cdf_b : empirical CDFs at each unique value
    psi : contribution of each unique value, in [-1, 1]
    gamma : fraction of the tied block before the CDFs cross (NaN when the
        block does not cross strictly)
    nonzero : whether the difference of the CDFs is nonzero somewhere on the
        block of each unique value
    delta : equality band used for CDF comparisons
    """

    n: int
    pooled: np.ndarray
    values: np.ndarray
    mult_a: np.ndarray
    mult_b: np.ndarray
    cdf_a: np.ndarray
    cdf_b: np.ndarray
    psi: np.ndarray
    gamma: np.ndarray
    nonzero: np.ndarray
    delta: float = 0.0

    @property
    def k_c(self):
        """Fraction of the 2n pooled points lying in nonzero blocks."""
        m = self.mult_a + self.mult_b
        return int(m[self.nonzero].sum()) / (2 * self.n)

    @property
    def signed(self):
        """``sum_j psi(c_j) / 2n``."""
        return float(np.dot(self.mult_a + self.mult_b, self.psi)) / (2 * self.n)

    @property
    def c_d(self):
        m = self.mult_a + self.mult_b
        nz = int(m[self.nonzero].sum())
        if nz == 0:
            return 0.5
        return centered(float(np.dot(m, self.psi)), nz)


def _signs(d, n, delta):
    if delta > 0:
        return np.where(np.abs(d) < delta * n, 0, np.sign(d)).astype(int)
    return np.sign(d).astype(int)


def psi_table(a, b, delta=0.0):
    """Build the ψ table for samples ``a`` and ``b``.

    CDF differences are kept as integer counts ``n (G_A - G_B)``. With
    ``delta > 0`` a difference smaller than ``delta`` in CDF units is
    treated as equality.
    """
    a, b = as_pair(a, b)
    if not (delta >= 0 and np.isfinite(delta)):
        raise InputError(f"delta must be a nonnegative finite number, got {delta!r}")
    n = a.size
    pooled = np.concatenate([a, b])
    values, inv = np.unique(pooled, return_inverse=True)
    mult_a = np.bincount(inv[:n], minlength=values.size)
    mult_b = np.bincount(inv[n:], minlength=values.size)
    cum_a = np.cumsum(mult_a)
    cum_b = np.cumsum(mult_b)
    d_cur = cum_a - cum_b
    d_prev = np.concatenate([[0], d_cur[:-1]])
    s0 = _signs(d_prev, n, delta)
    s1 = _signs(d_cur, n, delta)

    psi = np.zeros(values.size)
    gamma = np.full(values.size, np.nan)
    psi[((s0 >= 0) & (s1 > 0)) | ((s0 > 0) & (s1 >= 0))] = 1.0
    psi[((s0 <= 0) & (s1 < 0)) | ((s0 < 0) & (s1 <= 0))] = -1.0
    up = (s0 < 0) & (s1 > 0)
    down = (s0 > 0) & (s1 < 0)
    cross = up | down
    # a strict crossing implies mult_a != mult_b, so the denominator is nonzero
    assert np.all(d_prev[cross] != d_cur[cross])
    gamma[cross] = d_prev[cross] / (d_prev[cross] - d_cur[cross])
    psi[up] = 1.0 - 2.0 * gamma[up]
    psi[down] = 2.0 * gamma[down] - 1.0

    return PsiTable(
        n=n,
        pooled=np.sort(pooled),
        values=values,
        mult_a=mult_a,
        mult_b=mult_b,
        cdf_a=cum_a / n,
        cdf_b=cum_b / n,
        psi=psi,
        gamma=gamma,
        nonzero=~((s0 == 0) & (s1 == 0)),
        delta=float(delta),
    )


def estimate_c_d(a, b):
    """Empirical dominance rate of A over B.

    ``(sum_j psi(c_j) / 2n / k_c + 1) / 2``, or exactly 0.5 when the two
    empirical CDFs coincide everywhere (``k_c = 0``).
    """
    return psi_table(a, b).c_d


def estimate_c_d_delta(a, b, delta):
    """As :func:`estimate_c_d`, treating ``|G_A - G_B| < delta`` as equality."""
    if not delta > 0:
        raise InputError(f"delta must be positive, got {delta!r}")
    return psi_table(a, b, delta).c_d
