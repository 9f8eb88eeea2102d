"""Continuous random variables given analytically as finite mixtures.

A :class:`MixtureModel` is a weighted sum of parametric components drawn
from four families:

============  =====================================  ==========================
kind          params                                 support
============  =====================================  ==========================
gaussian      ``(mu, sigma)``                        whole real line
uniform       ``(lo, hi)``                           ``[lo, hi]``
beta          ``(alpha, beta[, lo, hi])``            ``[lo, hi]`` (default 0, 1)
lognormal     ``(mu, sigma[, loc, direction])``      ``[loc, inf)`` or ``(-inf, loc]``
============  =====================================  ==========================

The optional beta and lognormal parameters make every family closed under
affine maps ``scale * X + shift`` (a negative scale flips a lognormal's
``direction``), so :func:`transform` always returns another mixture of the
same kinds.

Example
-------
>>> m = mixture([(0.9, uniform(0.1, 1.0)), (0.1, uniform(-0.5, 0.0))])
>>> float(cdf(m, 0.05))
0.1
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import special

from .errors import InputError, InvalidTransformError

KINDS = ("gaussian", "uniform", "beta", "lognormal")

# Probabilities used both as quadrature breakpoints and as truncation
# limits for unbounded components.
TAIL = 1e-12
_PROBE_PROBS = np.array(
    [TAIL, 1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.05]
    + list(np.linspace(0.1, 0.9, 9))
    + [0.95, 0.99, 0.999, 1 - 1e-4, 1 - 1e-6, 1 - 1e-9, 1 - TAIL]
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _normalize_params(kind, params):
    p = [float(v) for v in params]
    if not all(math.isfinite(v) for v in p):
        raise InputError(f"{kind} parameters must be finite: {params!r}")
    if kind == "gaussian":
        if len(p) != 2 or p[1] <= 0:
            raise InputError(f"gaussian needs (mu, sigma > 0), got {params!r}")
    elif kind == "uniform":
        if len(p) != 2 or not p[0] < p[1]:
            raise InputError(f"uniform needs (lo < hi), got {params!r}")
    elif kind == "beta":
        if len(p) == 2:
            p += [0.0, 1.0]
        if len(p) != 4 or p[0] <= 0 or p[1] <= 0 or not p[2] < p[3]:
            raise InputError(f"beta needs (alpha > 0, beta > 0[, lo < hi]), got {params!r}")
    elif kind == "lognormal":
        if len(p) == 2:
            p += [0.0, 1.0]
        elif len(p) == 3:
            p += [1.0]
        if len(p) != 4 or p[1] <= 0 or p[3] not in (1.0, -1.0):
            raise InputError(
                f"lognormal needs (mu, sigma > 0[, loc[, direction = +-1]]), got {params!r}"
            )
    else:
        raise InputError(f"unknown component kind {kind!r}; expected one of {KINDS}")
    return tuple(p)


@dataclass(frozen=True)
class Component:
    kind: str
    params: tuple
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "params", _normalize_params(self.kind, self.params))
        w = float(self.weight)
        if not (0.0 < w <= 1.0):
            raise InputError(f"component weight must lie in (0, 1], got {self.weight!r}")
        object.__setattr__(self, "weight", w)

    @property
    def support(self):
        k, p = self.kind, self.params
        if k == "gaussian":
            return (-math.inf, math.inf)
        if k == "uniform":
            return (p[0], p[1])
        if k == "beta":
            return (p[2], p[3])
        return (p[2], math.inf) if p[3] > 0 else (-math.inf, p[2])

    def logpdf(self, x):
        k, p = self.kind, self.params
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            if k == "gaussian":
                z = (x - p[0]) / p[1]
                return -0.5 * z * z - _LOG_SQRT_2PI - math.log(p[1])
            if k == "uniform":
                inside = (x >= p[0]) & (x <= p[1])
                return np.where(inside, -math.log(p[1] - p[0]), -np.inf)
            if k == "beta":
                a, b, lo, hi = p
                width = hi - lo
                u = (x - lo) / width
                inside = (u > 0) & (u < 1)
                uc = np.clip(u, 0.5 * np.finfo(float).tiny, 1.0)
                val = (
                    special.xlogy(a - 1, uc)
                    + special.xlog1py(b - 1, -uc)
                    - special.betaln(a, b)
                    - math.log(width)
                )
                return np.where(inside, val, -np.inf)
            mu, sigma, loc, direction = p
            r = direction * (x - loc)
            inside = r > 0
            lr = np.log(np.where(inside, r, 1.0))
            z = (lr - mu) / sigma
            val = -0.5 * z * z - _LOG_SQRT_2PI - math.log(sigma) - lr
            return np.where(inside, val, -np.inf)

    def pdf(self, x):
        return np.exp(self.logpdf(x))

    def cdf(self, x):
        k, p = self.kind, self.params
        x = np.asarray(x, dtype=float)
        if k == "gaussian":
            return special.ndtr((x - p[0]) / p[1])
        if k == "uniform":
            return np.clip((x - p[0]) / (p[1] - p[0]), 0.0, 1.0)
        if k == "beta":
            a, b, lo, hi = p
            return special.betainc(a, b, np.clip((x - lo) / (hi - lo), 0.0, 1.0))
        mu, sigma, loc, direction = p
        r = direction * (x - loc)
        with np.errstate(divide="ignore"):
            z = (np.log(np.where(r > 0, r, 0.0)) - mu) / sigma
        g = special.ndtr(z)
        return g if direction > 0 else 1.0 - g

    def ppf(self, q):
        k, p = self.kind, self.params
        q = np.asarray(q, dtype=float)
        if k == "gaussian":
            return p[0] + p[1] * special.ndtri(q)
        if k == "uniform":
            return p[0] + (p[1] - p[0]) * q
        if k == "beta":
            a, b, lo, hi = p
            return lo + (hi - lo) * special.betaincinv(a, b, q)
        mu, sigma, loc, direction = p
        if direction > 0:
            return loc + np.exp(mu + sigma * special.ndtri(q))
        return loc - np.exp(mu + sigma * special.ndtri(1.0 - q))

    def draw(self, rng, size):
        k, p = self.kind, self.params
        if k == "gaussian":
            return rng.normal(p[0], p[1], size)
        if k == "uniform":
            return rng.uniform(p[0], p[1], size)
        if k == "beta":
            return p[2] + (p[3] - p[2]) * rng.beta(p[0], p[1], size)
        return p[2] + p[3] * rng.lognormal(p[0], p[1], size)

    def affine(self, scale, shift, weight=None):
        k, p = self.kind, self.params
        w = self.weight if weight is None else weight
        if k == "gaussian":
            q = (p[0] * scale + shift, p[1] * abs(scale))
        elif k == "uniform":
            q = tuple(sorted((p[0] * scale + shift, p[1] * scale + shift)))
        elif k == "beta":
            lo, hi = p[2] * scale + shift, p[3] * scale + shift
            q = (p[0], p[1], lo, hi) if scale > 0 else (p[1], p[0], hi, lo)
        else:
            q = (
                p[0] + math.log(abs(scale)),
                p[1],
                p[2] * scale + shift,
                p[3] * math.copysign(1.0, scale),
            )
        return Component(k, q, w)


@dataclass(frozen=True)
class AffineTransform:
    """The map ``x -> scale * x + shift``."""

    scale: float
    shift: float = 0.0

    def __post_init__(self):
        if self.scale == 0 or not math.isfinite(self.scale) or not math.isfinite(self.shift):
            raise InvalidTransformError(f"transform needs a finite nonzero scale, got {self!r}")

    def inverse(self):
        return AffineTransform(1.0 / self.scale, -self.shift / self.scale)


@dataclass(frozen=True)
class MixtureModel:
    components: tuple
    support: tuple = None

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InputError("a mixture needs at least one component")
        total = math.fsum(c.weight for c in comps)
        if abs(total - 1.0) > 1e-12:
            raise InputError(f"mixture weights sum to {total!r}, not 1")
        object.__setattr__(self, "components", comps)
        lo = min(c.support[0] for c in comps)
        hi = max(c.support[1] for c in comps)
        if self.support is None:
            object.__setattr__(self, "support", (lo, hi))
        else:
            slo, shi = (float(v) for v in self.support)
            if not slo < shi or slo > lo or shi < hi:
                raise InputError(
                    f"declared support {self.support!r} must contain component supports [{lo}, {hi}]"
                )
            object.__setattr__(self, "support", (slo, shi))

    @property
    def weights(self):
        return np.array([c.weight for c in self.components])

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return sum(c.weight * c.pdf(x) for c in self.components)

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        parts = np.stack([math.log(c.weight) + c.logpdf(x) for c in self.components])
        return special.logsumexp(parts, axis=0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip(sum(c.weight * c.cdf(x) for c in self.components), 0.0, 1.0)

    def ppf(self, q, iterations=100):
        """Quantile function; exact for one component, bisection otherwise."""
        q = np.asarray(q, dtype=float)
        if len(self.components) == 1:
            return self.components[0].ppf(q)
        lo_t, hi_t = self.bounds()
        lo = np.full(q.shape, lo_t)
        hi = np.full(q.shape, hi_t)
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            below = self.cdf(mid) < q
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    def bounds(self):
        """Finite integration range: the support, with unbounded ends cut at
        the ``TAIL`` quantile of the outermost component."""
        lo = min(float(c.ppf(TAIL)) if math.isinf(c.support[0]) else c.support[0]
                 for c in self.components)
        hi = max(float(c.ppf(1 - TAIL)) if math.isinf(c.support[1]) else c.support[1]
                 for c in self.components)
        return lo, hi

    def breakpoints(self):
        """Component support ends plus a ladder of component quantiles,
        clipped to :meth:`bounds`."""
        lo, hi = self.bounds()
        pts = [lo, hi]
        for c in self.components:
            pts.extend(v for v in c.support if math.isfinite(v))
            pts.extend(np.asarray(c.ppf(_PROBE_PROBS)).tolist())
        pts = np.clip(np.array(pts, dtype=float), lo, hi)
        return np.unique(pts[np.isfinite(pts)])

    def sample(self, n, seed):
        return sample(self, n, seed)

    def transform(self, t):
        return transform(self, t)

    def to_dict(self):
        return {
            "components": [
                {"kind": c.kind, "params": list(c.params), "weight": c.weight}
                for c in self.components
            ]
        }


# --------------------------------------------------------------------------
# constructors


def gaussian(mu, sigma):
    return MixtureModel((Component("gaussian", (mu, sigma)),))


def uniform(lo, hi):
    return MixtureModel((Component("uniform", (lo, hi)),))


def beta(a, b, lo=0.0, hi=1.0):
    return MixtureModel((Component("beta", (a, b, lo, hi)),))


def lognormal(mu, sigma, loc=0.0):
    return MixtureModel((Component("lognormal", (mu, sigma, loc, 1.0)),))


def mixture(parts):
    """Mix models: ``parts`` is a sequence of ``(weight, MixtureModel)``.

    Nested mixtures are flattened. Weights are renormalized when they sum
    to 1 within floating-point slack.
    """
    parts = [(float(w), m) for w, m in parts if w > 0]
    total = math.fsum(w for w, _ in parts)
    if abs(total - 1.0) > 1e-9:
        raise InputError(f"mixture weights sum to {total!r}, not 1")
    comps = []
    for w, m in parts:
        for c in m.components:
            comps.append(Component(c.kind, c.params, w * c.weight / total))
    s = math.fsum(c.weight for c in comps)
    comps[-1] = Component(comps[-1].kind, comps[-1].params,
                          comps[-1].weight + (1.0 - s))
    return MixtureModel(tuple(comps))


# --------------------------------------------------------------------------
# operations


def pdf(model, x):
    """Mixture density; zero outside the support."""
    return model.pdf(x)


def cdf(model, x):
    return model.cdf(x)


def sample(model, n, seed):
    """Draw ``n`` i.i.d. values; the same ``seed`` always gives the same draw."""
    n = int(n)
    if n < 1:
        raise InputError("sample size must be at least 1")
    rng = np.random.default_rng(seed)
    k = len(model.components)
    which = rng.choice(k, size=n, p=model.weights) if k > 1 else np.zeros(n, dtype=int)
    out = np.empty(n)
    for j, c in enumerate(model.components):
        idx = np.flatnonzero(which == j)
        if idx.size:
            out[idx] = c.draw(rng, idx.size)
    return out


def transform(model, t, shift=None):
    """Law of ``t.scale * X + t.shift``.

    ``t`` may be an :class:`AffineTransform` or a bare scale, in which case
    ``shift`` (default 0) completes it.
    """
    if not isinstance(t, AffineTransform):
        t = AffineTransform(float(t), 0.0 if shift is None else float(shift))
    comps = tuple(c.affine(t.scale, t.shift) for c in model.components)
    return MixtureModel(comps)


# --------------------------------------------------------------------------
# JSON


def from_dict(spec):
    try:
        items = spec["components"]
        comps = tuple(
            Component(item["kind"], tuple(item["params"]), item.get("weight", 1.0))
            for item in items
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed mixture specification: {exc}") from exc
    return MixtureModel(comps)


def load_mixture(path):
    try:
        spec = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    return from_dict(spec)


def save_mixture(model, path):
    Path(path).write_text(json.dumps(model.to_dict(), indent=2) + "\n")
