"""Cumulative difference-plot as a deterministic SVG, and the JSON report.

The SVG is written by hand so that identical inputs give identical bytes:
no timestamps, no generated ids, fixed number formatting.
"""

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import InputError
from .quantile_rv import quantile_crossings

_MARGIN = {"left": 60, "right": 20, "top": 44, "bottom": 64}


@dataclass(frozen=True)
class PlotSpec:
    title: str = "Cumulative difference-plot"
    label_a: str = "A"
    label_b: str = "B"
    width: int = 640
    height: int = 420
    alpha: float = 0.05
    show_triangle: bool = True
    max_points: int = 5000

    def __post_init__(self):
        if self.width < 200 or self.height < 200:
            raise InputError("plot width and height must be at least 200 pixels")
        if self.max_points < 2:
            raise InputError("max_points must be at least 2")


class Viewport:
    """Maps ``x`` in [0, 1] and ``y`` in [-1, 1] to pixel coordinates."""

    def __init__(self, spec):
        self.x0 = _MARGIN["left"]
        self.y0 = _MARGIN["top"]
        self.w = spec.width - _MARGIN["left"] - _MARGIN["right"]
        self.h = spec.height - _MARGIN["top"] - _MARGIN["bottom"]

    def px(self, x):
        return self.x0 + np.asarray(x, dtype=float) * self.w

    def py(self, y):
        return self.y0 + (1.0 - np.asarray(y, dtype=float)) / 2.0 * self.h

    def data_x(self, px):
        return (np.asarray(px, dtype=float) - self.x0) / self.w

    def data_y(self, py):
        return 1.0 - 2.0 * (np.asarray(py, dtype=float) - self.y0) / self.h


def decimate(values, max_points):
    """Indices of knots to draw.

    Keeps the first and last knots, both knots of every sign change and an
    even spread of the rest; all knots are kept when there are at most
    ``max_points``.
    """
    n = values.size
    if n <= max_points:
        return np.arange(n)
    s = np.sign(values)
    change = np.flatnonzero(s[1:] != s[:-1])
    keep = np.concatenate([
        [0, n - 1],
        change,
        change + 1,
        np.round(np.linspace(0, n - 1, max_points)).astype(int),
    ])
    return np.unique(keep)


def _fmt(v):
    return f"{v:.2f}"


def _points(xs, ys):
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))


def render_svg(d, band=None, spec=PlotSpec()):
    """Render the difference curve, optional band and guides as SVG bytes."""
    if band is not None and (band.x.shape != d.x.shape or not np.array_equal(band.x, d.x)):
        raise InputError("band grid does not match the curve grid")
    vp = Viewport(spec)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="white"/>',
        f'<text x="{spec.width / 2:.1f}" y="24" font-family="sans-serif" font-size="15" '
        f'text-anchor="middle">{escape(spec.title)}</text>',
    ]

    if spec.show_triangle:
        tri = _points(vp.px([0, 0.5, 1, 0.5]), vp.py([0, 1, 0, -1]))
        out.append(f'<polygon class="feasible" points="{tri}" fill="#e8eef8" stroke="none"/>')

    for q in (0.25, 0.5, 0.75):
        x = _fmt(float(vp.px(q)))
        out.append(f'<line class="quantile" x1="{x}" y1="{_fmt(vp.y0)}" x2="{x}" '
                   f'y2="{_fmt(vp.y0 + vp.h)}" stroke="#bbbbbb" stroke-dasharray="4,4"/>')

    if band is not None:
        idx = np.unique(np.concatenate([decimate(band.lower, spec.max_points),
                                        decimate(band.upper, spec.max_points)]))
        xs = np.concatenate([band.x[idx], band.x[idx][::-1]])
        ys = np.concatenate([band.upper[idx], band.lower[idx][::-1]])
        out.append(f'<polygon class="band" points="{_points(vp.px(xs), vp.py(ys))}" '
                   f'fill="#4477aa" fill-opacity="0.25" stroke="none"/>')

    zy = _fmt(float(vp.py(0)))
    out.append(f'<line class="zero" x1="{_fmt(vp.x0)}" y1="{zy}" x2="{_fmt(vp.x0 + vp.w)}" '
               f'y2="{zy}" stroke="#555555" stroke-width="1"/>')

    idx = decimate(d.values, spec.max_points)
    out.append(f'<polyline class="diff" points="{_points(vp.px(d.x[idx]), vp.py(d.values[idx]))}" '
               f'fill="none" stroke="#cc3311" stroke-width="1.5"/>')

    out.append(f'<rect x="{_fmt(vp.x0)}" y="{_fmt(vp.y0)}" width="{_fmt(vp.w)}" '
               f'height="{_fmt(vp.h)}" fill="none" stroke="black"/>')
    for t in (0, 0.25, 0.5, 0.75, 1):
        out.append(f'<text x="{_fmt(float(vp.px(t)))}" y="{_fmt(vp.y0 + vp.h + 16)}" '
                   f'font-family="sans-serif" font-size="11" text-anchor="middle">{t:g}</text>')
    for t in (-1, -0.5, 0, 0.5, 1):
        out.append(f'<text x="{_fmt(vp.x0 - 6)}" y="{_fmt(float(vp.py(t)) + 4)}" '
                   f'font-family="sans-serif" font-size="11" text-anchor="end">{t:g}</text>')

    legend = (f"diff = G_YA - G_YB; above 0: {spec.label_a} takes lower values "
              f"(minimization)")
    if band is not None:
        legend += f"; band {100 * (1 - spec.alpha):g}%"
    out.append(f'<text x="{_fmt(vp.x0)}" y="{spec.height - 12}" font-family="sans-serif" '
               f'font-size="11">{escape(legend)}</text>')
    out.append(f'<text x="{_fmt(vp.x0 + vp.w)}" y="{_fmt(vp.y0 - 6)}" font-family="sans-serif" '
               f'font-size="11" text-anchor="end">A: {escape(spec.label_a)}  '
               f'B: {escape(spec.label_b)}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


_SIGN_NAMES = {1: "positive", -1: "negative", 0: "zero"}


def export_report(estimates, bounds, verdict, paths=None):
    """JSON summary of a comparison.

    Parameters
    ----------
    estimates : mapping with ``c_p``, ``c_d``, ``n``, ``alpha``,
        ``resamples``, ``seed`` and ``curve`` (a DiffCurve)
    bounds : ``(c_p_low, c_p_high, c_d_low, c_d_high)`` or None
    verdict : a DominanceVerdict or its string value
    paths : optional mapping of output names to file paths; a ``report``
        entry is where the JSON is written

    Returns
    -------
    str
        The JSON document.
    """
    crossings = [
        {"start": s, "end": e, "sign": _SIGN_NAMES[k]}
        for s, e, k in quantile_crossings(estimates["curve"])
    ]
    doc = {
        "c_p": estimates["c_p"],
        "c_d": estimates["c_d"],
        "c_p_interval": None if bounds is None else [bounds[0], bounds[1]],
        "c_d_interval": None if bounds is None else [bounds[2], bounds[3]],
        "n": int(estimates["n"]),
        "alpha": estimates.get("alpha"),
        "resamples": estimates.get("resamples"),
        "seed": estimates.get("seed"),
        "verdict": getattr(verdict, "value", verdict),
        "quantile_crossings": crossings,
    }
    if paths:
        doc["outputs"] = {k: str(v) for k, v in paths.items() if v is not None}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if paths and paths.get("report"):
        with open(paths["report"], "w") as fh:
            fh.write(text)
    return text
