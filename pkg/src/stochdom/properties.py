"""Randomized checks of the eight dominance-measure properties.

Each property is tested on ``trials`` seeded model pairs (or triples). A
property passes only if every trial satisfies its defining identity or
inequality within the tolerance; the first failing trial is kept as a
witness. Trial ``t`` of property ``p`` draws from
``np.random.default_rng([seed, p, t])``, so results do not depend on the
order in which trials run.

=====  ==================================================================
 1     ``C = 1`` iff A dominates B, ``C = 0`` iff B dominates A
 2     ``C(A, B) = 1 - C(B, A)``
 3     ``C(-A, -B) = 1 - C(A, B)``
 4     ``A = B`` implies ``C(A, B) = C(B, A)``
 5     ``C(A + l, B + l) = C(A, B)``
 6     ``C(l A, l B) = C(A, B)`` for ``l > 0``
 7     ``|C(A, M(B1, B2)) - C(A, B1)| <= tau``
 8     moving a mixture part of B that stays clear of A leaves C unchanged
=====  ==================================================================
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import analytic_rv as rv
from .dominance_measures import reference_measure
from .errors import InputError

# Properties each measure is expected to satisfy.
EXPECTED_PROPERTIES = {
    "kl": {4, 5, 6, 8},
    "js": {4, 5, 6, 8},
    "tv": {4, 5, 6, 7, 8},
    "hellinger": {4, 5, 6, 7, 8},
    "wasserstein": {4, 5},
    "c_p": {2, 3, 4, 5, 6, 7, 8},
    "c_d": {1, 2, 3, 4, 5, 6, 8},
}
PROPERTIES = tuple(range(1, 9))


@dataclass(frozen=True)
class PropertyTrialConfig:
    """Settings for one property-suite run.

    ``property_id`` None runs all eight properties. ``tau``, ``rho``,
    ``lam``, ``lam1`` and ``lam2`` left as None are drawn per trial.
    """

    property_id: int = None
    trials: int = 50
    seed: int = 0
    tolerance: float = 1e-4
    tau: float = None
    rho: float = None
    lam: float = None
    lam1: float = None
    lam2: float = None
    quad_tol: float = 1e-9

    def __post_init__(self):
        if self.property_id is not None and self.property_id not in PROPERTIES:
            raise InputError(f"property_id must be in 1..8, got {self.property_id!r}")
        if self.trials < 10:
            raise InputError(f"the property suite needs at least 10 trials, got {self.trials}")
        if not self.tolerance > 0:
            raise InputError("tolerance must be positive")
        for name in ("tau", "rho"):
            v = getattr(self, name)
            if v is not None and not 0 < v < 1:
                raise InputError(f"{name} must lie strictly inside (0, 1), got {v!r}")
        if self.lam1 is not None and not self.lam1 > 0:
            raise InputError("lam1 must be positive")


@dataclass
class PropertyResult:
    property_id: int
    passed: bool
    trials: int
    expected: bool = None
    witness: dict = None


@dataclass
class PropertyReport:
    measure_id: str
    results: dict = field(default_factory=dict)

    @property
    def satisfied(self):
        return {p for p, r in self.results.items() if r.passed}

    def matches_expectation(self):
        return all(r.expected is None or r.passed == r.expected for r in self.results.values())

    def to_dict(self):
        return {
            "measure_id": self.measure_id,
            "properties": {
                str(p): {
                    "passed": r.passed,
                    "expected": r.expected,
                    "trials": r.trials,
                    "witness": None if r.witness is None
                    else {k: _jsonable(v) for k, v in r.witness.items()},
                }
                for p, r in sorted(self.results.items())
            },
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _jsonable(v):
    if isinstance(v, rv.MixtureModel):
        return v.to_dict()
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, np.integer):
        return int(v)
    return v


# --------------------------------------------------------------------------
# random model families


def random_model(rng):
    """1-3 gaussian or uniform components; centers in [-2, 2], scales in [0.05, 1]."""
    k = int(rng.integers(1, 4))
    w = rng.dirichlet(np.ones(k))
    parts = []
    for i in range(k):
        mu = rng.uniform(-2, 2)
        s = rng.uniform(0.05, 1)
        m = rv.gaussian(mu, s) if rng.random() < 0.5 else rv.uniform(mu - s, mu + s)
        parts.append((w[i], m))
    return rv.mixture(parts)


def random_bounded(rng, lo, hi):
    """1-3 uniform or beta components inside [lo, hi]."""
    k = int(rng.integers(1, 4))
    w = rng.dirichlet(np.ones(k))
    parts = []
    for i in range(k):
        a, b = np.sort(rng.uniform(lo, hi, 2))
        if b - a < 0.05 * (hi - lo):
            a, b = lo, hi
        if rng.random() < 0.5:
            m = rv.uniform(a, b)
        else:
            m = rv.beta(rng.uniform(1, 5), rng.uniform(1, 5), a, b)
        parts.append((w[i], m))
    return rv.mixture(parts)


def _same_law(m):
    """The same distribution written differently: components reversed and
    the first one split in two."""
    comps = list(m.components[::-1])
    c = comps[0]
    comps[0:1] = [rv.Component(c.kind, c.params, c.weight / 2)] * 2
    return rv.MixtureModel(tuple(comps))


def _median(m):
    return float(m.ppf(np.array([0.5]))[0])


# --------------------------------------------------------------------------
# trial generators: each returns (ok, info)


def _close(x, y, tol):
    if math.isinf(x) or math.isinf(y):
        return x == y
    return abs(x - y) <= tol


def _p1(C, rng, t, cfg):
    kind = ("dominating", "dominated", "crossing")[t % 3]
    if t == 0:
        a, b = rv.gaussian(0, 1), rv.gaussian(1, 1)
    else:
        a = random_model(rng)
        if kind == "crossing":
            s = rng.uniform(1.25, 2.0) if rng.random() < 0.5 else rng.uniform(0.5, 0.8)
            med = _median(a)
            b = rv.transform(a, rv.AffineTransform(s, med - s * med))
        else:
            delta = rng.uniform(0.1, 1.0)
            b = rv.transform(a, rv.AffineTransform(1.0, delta if kind == "dominating" else -delta))
    v = C(a, b)
    tol = cfg.tolerance
    in_range = -tol <= v <= 1 + tol
    if kind == "dominating":
        ok = in_range and abs(v - 1) <= tol
    elif kind == "dominated":
        ok = in_range and abs(v) <= tol
    else:
        ok = in_range and tol < v < 1 - tol
    return ok, {"case": kind, "a": a, "b": b, "value": v}


def _p2(C, rng, t, cfg):
    a, b = random_model(rng), random_model(rng)
    ab, ba = C(a, b), C(b, a)
    return _close(ab + ba, 1.0, cfg.tolerance), {"a": a, "b": b, "c_ab": ab, "c_ba": ba}


def _p3(C, rng, t, cfg):
    a, b = random_model(rng), random_model(rng)
    neg = rv.AffineTransform(-1.0, 0.0)
    v, w = C(a, b), C(rv.transform(a, neg), rv.transform(b, neg))
    return _close(w, 1.0 - v, cfg.tolerance), {"a": a, "b": b, "c_ab": v, "c_neg": w}


def _p4(C, rng, t, cfg):
    a = random_model(rng)
    b = _same_law(a)
    ab, ba = C(a, b), C(b, a)
    return _close(ab, ba, cfg.tolerance), {"a": a, "b": b, "c_ab": ab, "c_ba": ba}


def _p5(C, rng, t, cfg):
    a, b = random_model(rng), random_model(rng)
    lam = cfg.lam if cfg.lam is not None else rng.uniform(-5, 5)
    sh = rv.AffineTransform(1.0, lam)
    v, w = C(a, b), C(rv.transform(a, sh), rv.transform(b, sh))
    return _close(v, w, cfg.tolerance), {"a": a, "b": b, "lam": lam, "c": v, "c_moved": w}


def _p6(C, rng, t, cfg):
    a, b = random_model(rng), random_model(rng)
    lam = cfg.lam if cfg.lam is not None and cfg.lam > 0 else rng.uniform(0.2, 5)
    sc = rv.AffineTransform(lam, 0.0)
    v, w = C(a, b), C(rv.transform(a, sc), rv.transform(b, sc))
    return _close(v, w, cfg.tolerance), {"a": a, "b": b, "lam": lam, "c": v, "c_scaled": w}


def _p7(C, rng, t, cfg):
    tau = cfg.tau if cfg.tau is not None else rng.uniform(0.01, 0.5)
    if t == 0:
        tau = 0.1
        a, b1, b2 = rv.uniform(0, 1), rv.uniform(0.1, 1), rv.uniform(-0.5, 0)
        case = "dominance-flip triple"
    elif t == 1:
        a = random_bounded(rng, 0, 1)
        b1, b2 = a, random_bounded(rng, 2, 3)
        case = "a equals b1, b2 disjoint"
    elif t == 2:
        a = random_bounded(rng, 0, 1)
        b1, b2 = random_bounded(rng, 2, 3), a
        case = "a equals b2, b1 disjoint"
    else:
        a, b1, b2 = random_model(rng), random_model(rng), random_model(rng)
        case = "random"
    b = rv.mixture([(1 - tau, b1), (tau, b2)])
    v, w = C(a, b), C(a, b1)
    if math.isinf(v) or math.isinf(w):
        ok = v == w
    else:
        ok = abs(v - w) <= tau + cfg.tolerance
    return ok, {"case": case, "tau": tau, "a": a, "b1": b1, "b2": b2, "c_mix": v, "c_b1": w}


def _p8(C, rng, t, cfg):
    rho = cfg.rho if cfg.rho is not None else rng.uniform(0.1, 0.9)
    lam1 = cfg.lam1 if cfg.lam1 is not None else rng.uniform(0.5, 1.5)
    lam2 = cfg.lam2 if cfg.lam2 is not None else rng.uniform(0.0, 1.0)
    a = random_bounded(rng, 0, 1)
    b1 = random_model(rng)
    b2 = random_bounded(rng, 3, 4)
    moved = rv.transform(b2, rv.AffineTransform(lam1, lam2))
    if moved.support[0] <= a.support[1] and a.support[0] <= moved.support[1]:
        raise InputError("property 8 transform overlaps the support of A")
    v = C(a, rv.mixture([(1 - rho, b1), (rho, b2)]))
    w = C(a, rv.mixture([(1 - rho, b1), (rho, moved)]))
    return _close(v, w, cfg.tolerance), {
        "rho": rho, "lam1": lam1, "lam2": lam2, "a": a, "b1": b1, "b2": b2,
        "c": v, "c_moved": w,
    }


_CHECKS = {1: _p1, 2: _p2, 3: _p3, 4: _p4, 5: _p5, 6: _p6, 7: _p7, 8: _p8}


def run_property_suite(measure_id, cfg):
    """Run the property checks for one measure.

    Returns a :class:`PropertyReport`; ``expected`` on each result holds the
    value from :data:`EXPECTED_PROPERTIES` when the measure is listed there.
    """

    def C(a, b):
        return reference_measure(a, b, measure_id, cfg.quad_tol).value

    props = PROPERTIES if cfg.property_id is None else (cfg.property_id,)
    report = PropertyReport(measure_id)
    expected = EXPECTED_PROPERTIES.get(measure_id)
    for p in props:
        witness = None
        for t in range(cfg.trials):
            rng = np.random.default_rng([cfg.seed, p, t])
            ok, info = _CHECKS[p](C, rng, t, cfg)
            if not ok:
                witness = {"trial": t, **info}
                break
        report.results[p] = PropertyResult(
            property_id=p,
            passed=witness is None,
            trials=cfg.trials,
            expected=None if expected is None else p in expected,
            witness=witness,
        )
    return report
