"""Dominance measures and reference divergences for analytic models.

``c_p_analytic`` integrates ``g_B G_A`` numerically. ``c_d_analytic`` and
``classify`` work from a sign partition of ``G_A - G_B``: the real line is
split into maximal intervals on which the difference is positive, negative
or zero (within ``EQUAL_BAND``), and the masses of A and B on those
intervals come straight from the CDFs, so no quadrature is involved.

Example
-------
>>> from stochdom.analytic_rv import gaussian
>>> round(c_p_analytic(gaussian(0, 1), gaussian(1, 1)).value, 6)
0.76025
>>> classify(gaussian(0, 1), gaussian(1, 1))
<DominanceVerdict.A_DOMINATES: 'a_dominates'>
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import integrate
from .errors import InputError, UndefinedDensityError

# |G_A - G_B| at or below this counts as equality.
EQUAL_BAND = 1e-10
# Mass of g_A outside the support of g_B beyond which KL is infinite.
KL_ESCAPE = 1e-9

MEASURES = ("c_p", "c_d", "kl", "js", "tv", "hellinger", "wasserstein",
            "signed_wasserstein", "c_i")


class DominanceVerdict(enum.Enum):
    A_DOMINATES = "a_dominates"
    B_DOMINATES = "b_dominates"
    CROSS = "cross"
    EQUAL = "equal"


@dataclass(frozen=True)
class MeasureValue:
    value: float
    measure_id: str
    quadrature_error_estimate: float = 0.0
    infinite: bool = False

    def __float__(self):
        return float(self.value)


def _check_tol(tol):
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol!r}")


def _joint_breakpoints(a, b, extra=()):
    lo = min(a.bounds()[0], b.bounds()[0])
    hi = max(a.bounds()[1], b.bounds()[1])
    pts = np.concatenate([a.breakpoints(), b.breakpoints(), np.asarray(extra, float), [lo, hi]])
    pts = pts[np.isfinite(pts)]
    return np.unique(np.clip(pts, lo, hi))


# --------------------------------------------------------------------------
# sign partition of G_A - G_B


@dataclass(frozen=True)
class SignPartition:
    """Maximal intervals of constant sign of ``G_A - G_B``.

    ``edges`` has one more entry than ``signs``; the first and last edges
    are infinite. ``bracket`` is the total CDF mass inside the final
    bisection brackets of the located transitions, a bound on the error of
    any mass computed from the partition.
    """

    edges: np.ndarray
    signs: np.ndarray
    bracket: float

    def mass(self, model, sign):
        lo = self.edges[:-1][self.signs == sign]
        hi = self.edges[1:][self.signs == sign]
        return float(np.sum(model.cdf(hi) - model.cdf(lo)))

    @property
    def transitions(self):
        return self.edges[1:-1]


def _sign(a, b, x):
    d = a.cdf(x) - b.cdf(x)
    return np.where(d > EQUAL_BAND, 1, np.where(d < -EQUAL_BAND, -1, 0))


def sign_partition(a, b, refine=16, iterations=60):
    base = _joint_breakpoints(a, b)
    # refine every breakpoint gap with equispaced points
    t = np.linspace(0.0, 1.0, refine + 1)[:-1]
    grid = np.concatenate([(base[:-1, None] + np.diff(base)[:, None] * t).ravel(), base[-1:]])
    s = _sign(a, b, grid)
    change = np.flatnonzero(s[1:] != s[:-1])
    lo = grid[change]
    hi = grid[change + 1]
    s_lo = s[change]
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        same = _sign(a, b, mid) == s_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    bracket = float(np.sum(np.abs(a.cdf(hi) - a.cdf(lo)) + np.abs(b.cdf(hi) - b.cdf(lo))))
    edges = np.concatenate([[-math.inf], hi, [math.inf]])
    signs = np.concatenate([s[:1], s[change + 1]])
    return SignPartition(edges, signs, bracket)


# --------------------------------------------------------------------------
# dominance measures


def c_p_analytic(a, b, tol=1e-8):
    """Probability that X_A < X_B: ``integral of g_B(x) G_A(x) dx``."""
    _check_tol(tol)
    value, err = integrate(lambda x: b.pdf(x) * a.cdf(x), _joint_breakpoints(a, b), tol)
    return MeasureValue(float(np.clip(value, 0.0, 1.0)), "c_p", err)


def _density_constants(a, b, part):
    """``(P_A(G_A > G_B), P_A(G_A != G_B), P_B(G_A < G_B), P_B(G_A != G_B))``."""
    pa_pos = part.mass(a, 1)
    pa_neq = pa_pos + part.mass(a, -1)
    pb_neg = part.mass(b, -1)
    pb_neq = pb_neg + part.mass(b, 1)
    return pa_pos, pa_neq, pb_neg, pb_neq


def dominance_density(a, b, x, tol=1e-8):
    """Dominance density at ``x``.

    ``g_A(x) k_A`` where ``G_A > G_B``, ``-g_B(x) k_B`` where ``G_A < G_B``
    and 0 where the CDFs agree. ``k_A`` is the inverse of the A-mass of the
    set where the CDFs differ, ``k_B`` likewise.
    """
    _check_tol(tol)
    part = sign_partition(a, b)
    if np.all(part.signs == 0):
        raise UndefinedDensityError("the dominance density is undefined for equal distributions")
    _, pa_neq, _, pb_neq = _density_constants(a, b, part)
    x = np.asarray(x, dtype=float)
    s = _sign(a, b, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(s > 0, a.pdf(x) / pa_neq, np.where(s < 0, -b.pdf(x) / pb_neq, 0.0))
    return float(out) if out.ndim == 0 else out


def c_d_analytic(a, b, tol=1e-8):
    """Dominance rate of A over B, ``0.5 * integral of D + 0.5``.

    Exactly 0.5 when the CDFs agree everywhere.
    """
    _check_tol(tol)
    part = sign_partition(a, b)
    if np.all(part.signs == 0):
        return MeasureValue(0.5, "c_d", 0.0)
    pa_pos, pa_neq, pb_neg, pb_neq = _density_constants(a, b, part)
    up = pa_pos / pa_neq if pa_neq > 0 else 0.0
    down = pb_neg / pb_neq if pb_neq > 0 else 0.0
    value = float(np.clip(0.5 * (up - down) + 0.5, 0.0, 1.0))
    return MeasureValue(value, "c_d", part.bracket)


def classify(a, b, probes=1000, tol=EQUAL_BAND):
    """Dominance verdict from ``G_A - G_B`` on a quantile-spaced grid.

    The grid holds ``probes`` quantiles of each model plus the breakpoints
    of both.
    """
    if probes < 100:
        raise InputError(f"classify needs at least 100 probes, got {probes}")
    p = (np.arange(probes) + 0.5) / probes
    x = np.concatenate([a.ppf(p), b.ppf(p), _joint_breakpoints(a, b)])
    d = a.cdf(x) - b.cdf(x)
    above = bool(np.any(d > tol))
    below = bool(np.any(d < -tol))
    if above and below:
        return DominanceVerdict.CROSS
    if above:
        return DominanceVerdict.A_DOMINATES
    if below:
        return DominanceVerdict.B_DOMINATES
    return DominanceVerdict.EQUAL


# --------------------------------------------------------------------------
# reference measures


def _kl(a, b, tol, pts):
    def escaped(x):
        return np.where(np.isneginf(b.logpdf(x)), a.pdf(x), 0.0)

    lost, _ = integrate(escaped, pts, tol)
    if lost > KL_ESCAPE:
        return MeasureValue(math.inf, "kl", 0.0, infinite=True)

    def f(x):
        la, lb = a.logpdf(x), b.logpdf(x)
        ok = np.isfinite(la) & np.isfinite(lb)
        with np.errstate(invalid="ignore"):
            return np.where(ok, np.exp(la) * (la - lb), 0.0)

    value, err = integrate(f, pts, tol)
    return MeasureValue(max(value, 0.0), "kl", err)


def _js_integrand(x, a, b):
    la, lb = a.logpdf(x), b.logpdf(x)
    lm = np.logaddexp(la, lb) - math.log(2.0)
    with np.errstate(invalid="ignore"):
        ta = np.where(np.isfinite(la), np.exp(la) * (la - lm), 0.0)
        tb = np.where(np.isfinite(lb), np.exp(lb) * (lb - lm), 0.0)
    return ta + tb


def reference_measure(a, b, measure_id, tol=1e-8):
    """Evaluate one of :data:`MEASURES` on the pair ``(a, b)``.

    ``kl`` is ``integral of g_A log(g_A / g_B)``; it is reported as
    ``+inf`` with ``infinite=True`` when more than ``KL_ESCAPE`` of A's
    mass lies where ``g_B = 0``. ``js`` is ``KL(A, M) + KL(B, M)`` with
    ``M`` the equal-weight mixture, without the usual factor one half.
    """
    _check_tol(tol)
    if measure_id == "c_p":
        return c_p_analytic(a, b, tol)
    if measure_id == "c_d":
        return c_d_analytic(a, b, tol)
    if measure_id not in MEASURES:
        raise InputError(f"unknown measure {measure_id!r}; expected one of {MEASURES}")

    extra = ()
    if measure_id in ("wasserstein", "c_i"):
        t = sign_partition(a, b).transitions
        extra = t[np.isfinite(t)]
    pts = _joint_breakpoints(a, b, extra)

    if measure_id == "kl":
        return _kl(a, b, tol, pts)
    if measure_id == "js":
        f = lambda x: _js_integrand(x, a, b)  # noqa: E731
    elif measure_id == "tv":
        f = lambda x: 0.5 * np.abs(a.pdf(x) - b.pdf(x))  # noqa: E731
    elif measure_id == "hellinger":
        f = lambda x: (np.sqrt(a.pdf(x)) - np.sqrt(b.pdf(x))) ** 2  # noqa: E731
    elif measure_id == "wasserstein":
        f = lambda x: np.abs(a.cdf(x) - b.cdf(x))  # noqa: E731
    elif measure_id == "signed_wasserstein":
        f = lambda x: a.cdf(x) - b.cdf(x)  # noqa: E731
    else:  # c_i
        f = lambda x: np.maximum(0.0, a.cdf(x) - b.cdf(x)) * b.pdf(x)  # noqa: E731

    value, err = integrate(f, pts, tol)
    if measure_id == "hellinger":
        value = math.sqrt(max(value, 0.0))
    elif measure_id in ("tv", "c_i"):
        value = min(max(value, 0.0), 1.0)
    elif measure_id in ("js", "wasserstein"):
        value = max(value, 0.0)
    return MeasureValue(float(value), measure_id, err)


def run_property_suite(measure_id, cfg):
    """Check the eight dominance-measure properties; see :mod:`.properties`."""
    from .properties import run_property_suite as run

    return run(measure_id, cfg)
