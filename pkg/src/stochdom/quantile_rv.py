"""Quantile random variables and the cumulative difference curve.

Pooling two samples of size ``n`` and ranking the pooled values maps each
observation to one of ``2n`` bins of width ``1/2n`` on [0, 1]. A unique
value with multiplicities ``m_A`` and ``m_B`` owns a block of ``m_A + m_B``
consecutive bins, on which Y_A has density ``2 m_A / (m_A + m_B)`` and Y_B
has density ``2 m_B / (m_A + m_B)``. The two densities therefore always sum
to 2, and each CDF is piecewise linear with knots at ``j / 2n``.

The difference ``diff(x) = G_{Y_A}(x) - G_{Y_B}(x)`` carries both
estimators: ``C_P = 0.5 + integral of diff`` and ``C_D`` is read off the
lengths where diff is positive or negative.

Example
-------
>>> d = diff_curve(build_quantile_pair([1, 2], [3, 4]))
>>> d.values.tolist()
[0.0, 0.5, 1.0, 0.5, 0.0]
>>> c_p_from_diff(d), c_d_from_diff(d)
(1.0, 1.0)
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .estimators import as_pair, centered

# Bootstrap replicates are processed in chunks of at most this many bins.
_CHUNK_CELLS = 2_000_000


def _knots(a2d, b2d):
    """Exact CDF knots of Y_A and of the difference, for a batch of pairs.

    ``a2d`` and ``b2d`` have shape (R, n). Returns two (R, 2n + 1) arrays,
    ``G_{Y_A}(j/2n)`` and ``diff(j/2n)``, both computed from integer
    numerators so that equal CDFs give an exact zero difference.
    """
    R, n = a2d.shape
    pooled = np.concatenate([a2d, b2d], axis=1)
    is_a = np.concatenate([np.ones((R, n), np.int64), np.zeros((R, n), np.int64)], axis=1)
    order = np.argsort(pooled, axis=1, kind="stable")
    sv = np.take_along_axis(pooled, order, axis=1)
    sa = np.take_along_axis(is_a, order, axis=1)

    new = np.ones((R, 2 * n), dtype=bool)
    new[:, 1:] = sv[:, 1:] != sv[:, :-1]
    flat_new = new.ravel()
    gid = np.cumsum(flat_new) - 1
    size = np.bincount(gid)
    mult_a = np.bincount(gid, weights=sa.ravel()).astype(np.int64)
    mult_b = size - mult_a
    pos = np.broadcast_to(np.arange(2 * n), (R, 2 * n)).ravel()
    start = pos[flat_new]
    a_before = (np.cumsum(sa, axis=1) - sa).ravel()[flat_new]
    b_before = start - a_before

    g = gid.reshape(R, 2 * n)
    m = size[g]
    offset = pos.reshape(R, 2 * n) - start[g]
    den = n * m
    ga = np.ones((R, 2 * n + 1))
    diff = np.zeros((R, 2 * n + 1))
    ga[:, :-1] = (a_before[g] * m + offset * mult_a[g]) / den
    diff[:, :-1] = ((a_before[g] - b_before[g]) * m + offset * (mult_a[g] - mult_b[g])) / den
    return ga, diff


@dataclass(frozen=True)
class QuantilePair:
    """The quantile random variables Y_A and Y_B of two samples.

    Attributes
    ----------
    n : sample size
    density_a, density_b : bin densities over the 2n bins ``[j/2n, (j+1)/2n)``
    values : unique pooled values, in rank order (rank ``k`` is index ``k - 1``)
    mult_a, mult_b : multiplicities of each unique value
    rank_counts : number of pooled items with rank at most ``k``, for
        ``k = 0 .. len(values)``; block ``k`` starts at bin ``rank_counts[k - 1]``
    knots_a : ``G_{Y_A}(j/2n)`` for ``j = 0 .. 2n``
    knots_diff : ``diff(j/2n)`` for ``j = 0 .. 2n``
    """

    n: int
    density_a: np.ndarray
    density_b: np.ndarray
    values: np.ndarray
    mult_a: np.ndarray
    mult_b: np.ndarray
    rank_counts: np.ndarray
    knots_a: np.ndarray
    knots_diff: np.ndarray

    @property
    def grid(self):
        return np.arange(2 * self.n + 1) / (2 * self.n)

    @property
    def knots_b(self):
        return 2.0 * self.grid - self.knots_a


def build_quantile_pair(a, b):
    a, b = as_pair(a, b)
    n = a.size
    values, inv = np.unique(np.concatenate([a, b]), return_inverse=True)
    mult_a = np.bincount(inv[:n], minlength=values.size)
    mult_b = np.bincount(inv[n:], minlength=values.size)
    m = mult_a + mult_b
    rank_counts = np.concatenate([[0], np.cumsum(m)])
    density_a = np.repeat(2.0 * mult_a / m, m)
    density_b = np.repeat(2.0 * mult_b / m, m)
    ga, diff = _knots(a[None, :], b[None, :])
    return QuantilePair(
        n=n,
        density_a=density_a,
        density_b=density_b,
        values=values,
        mult_a=mult_a,
        mult_b=mult_b,
        rank_counts=rank_counts,
        knots_a=ga[0],
        knots_diff=diff[0],
    )


def knots_batch(a2d, b2d):
    """``G_{Y_A}`` knots for many sample pairs at once, shape (R, 2n + 1)."""
    a2d = np.asarray(a2d, dtype=float)
    b2d = np.asarray(b2d, dtype=float)
    R, n = a2d.shape
    step = max(1, _CHUNK_CELLS // (2 * n))
    out = np.empty((R, 2 * n + 1))
    for lo in range(0, R, step):
        out[lo:lo + step] = _knots(a2d[lo:lo + step], b2d[lo:lo + step])[0]
    return out


def cumulative(q, side, x):
    """CDF of Y_A (``side="A"``) or Y_B at ``x`` in [0, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)) or np.any(np.isnan(x)):
        raise InputError("cumulative is defined on [0, 1] only")
    if side not in ("A", "B"):
        raise InputError(f"side must be 'A' or 'B', got {side!r}")
    knots = q.knots_a if side == "A" else q.knots_b
    out = np.interp(x, q.grid, knots)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DiffCurve:
    """Piecewise-linear ``diff`` stored at the knots ``x_j``."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.shape != v.shape or x.ndim != 1 or x.size < 2:
            raise InputError("a difference curve needs matching 1-d grids of at least 2 knots")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return (self.x.size - 1) // 2

    def __call__(self, t):
        return np.interp(t, self.x, self.values)

    @classmethod
    def on_grid(cls, values):
        values = np.asarray(values, dtype=float)
        return cls(np.linspace(0.0, 1.0, values.size), values)


def diff_curve(q):
    return DiffCurve(q.grid, q.knots_diff.copy())


def c_p_from_diff(d):
    """``0.5 + integral of diff``, exact for a piecewise-linear curve."""
    return float(0.5 + np.trapezoid(d.values, d.x))


def sign_lengths(d):
    """Lengths of [0, 1] where diff is positive and where it is negative.

    Each segment is split at an interior zero crossing; a segment touching
    zero only at an endpoint counts fully toward the sign of the other end.
    """
    d0, d1 = d.values[:-1], d.values[1:]
    h = np.diff(d.x)
    both_zero = (d0 == 0) & (d1 == 0)
    cross = (d0 * d1) < 0
    pos_whole = ~both_zero & ~cross & (d0 >= 0) & (d1 >= 0)
    neg_whole = ~both_zero & ~cross & (d0 <= 0) & (d1 <= 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(cross, d0 / (d0 - d1), 0.0)
    first = t * h
    rest = h - first
    pos = h[pos_whole].sum() + np.where(cross & (d0 > 0), first, 0).sum() \
        + np.where(cross & (d0 < 0), rest, 0).sum()
    neg = h[neg_whole].sum() + np.where(cross & (d0 < 0), first, 0).sum() \
        + np.where(cross & (d0 > 0), rest, 0).sum()
    return float(pos), float(neg)


def c_d_from_diff(d):
    """Dominance rate read off the curve.

    ``((pos - neg) / (pos + neg) + 1) / 2`` where ``pos`` and ``neg`` are the
    lengths on which diff is positive and negative; 0.5 when diff is zero
    everywhere.
    """
    pos, neg = sign_lengths(d)
    if pos + neg == 0:
        return 0.5
    return centered(pos - neg, pos + neg)


def quantile_crossings(d):
    """Maximal intervals of constant sign of diff.

    Returns a list of ``(start, end, sign)`` with sign in {-1, 0, 1}.
    Isolated zeros (single points) do not split an interval.
    """
    pieces = []
    for x0, x1, v0, v1 in zip(d.x[:-1], d.x[1:], d.values[:-1], d.values[1:]):
        if v0 * v1 < 0:
            xc = x0 + (x1 - x0) * (v0 / (v0 - v1))
            pieces.append((x0, xc, int(np.sign(v0))))
            pieces.append((xc, x1, int(np.sign(v1))))
        elif v0 == 0 and v1 == 0:
            pieces.append((x0, x1, 0))
        else:
            pieces.append((x0, x1, int(np.sign(v0 + v1))))
    merged = []
    for x0, x1, s in pieces:
        if merged and merged[-1][2] == s:
            merged[-1] = (merged[-1][0], x1, s)
        elif x1 > x0 or not merged:
            merged.append((x0, x1, s))
    return [(float(a), float(b), s) for a, b, s in merged]


def write_diff_csv(d, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "diff"])
        for x, v in zip(d.x, d.values):
            w.writerow([repr(float(x)), repr(float(v))])


def sample_verdict(d):
    """Dominance verdict of the empirical CDFs, from the sign of diff."""
    from .dominance_measures import DominanceVerdict

    above = bool(np.any(d.values > 0))
    below = bool(np.any(d.values < 0))
    if above and below:
        return DominanceVerdict.CROSS
    if above:
        return DominanceVerdict.A_DOMINATES
    if below:
        return DominanceVerdict.B_DOMINATES
    return DominanceVerdict.EQUAL
