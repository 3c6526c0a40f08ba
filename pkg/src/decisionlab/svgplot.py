"""Deterministic SVG 1.1 emitters for prediction and series graphics.

Three plot kinds: a Gaussian density curve, a history trend with
prediction bars (each bar spans mean +/- 3 std with a marked center), and
a plain scatter of two series.  Output is built without timestamps or
random ids, so identical inputs yield byte-identical documents.

The data-space geometry (density samples, bar extents) is exposed as
plain functions so numeric behavior can be checked without parsing SVG.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ZeroStd
from .lineargaussian import GaussianBelief

MARGIN = 54.0
DENSITY_SAMPLES = 240  # keeps the curve above the 200-sample contract


def gaussian_density(x: float, mean: float, std: float) -> float:
    """Normal probability density at ``x``."""
    z = (x - mean) / std
    return math.exp(-0.5 * z * z) / (std * math.sqrt(2.0 * math.pi))


def density_samples(
    belief: GaussianBelief, samples: int = DENSITY_SAMPLES
) -> list[tuple[float, float]]:
    """(x, pdf) pairs over [mean - 4*std, mean + 4*std]."""
    if belief.std <= 0:
        raise ZeroStd("density plot needs a strictly positive std")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    lo = belief.mean - 4.0 * belief.std
    hi = belief.mean + 4.0 * belief.std
    step = (hi - lo) / (samples - 1)
    return [(lo + i * step, gaussian_density(lo + i * step, belief.mean, belief.std)) for i in range(samples)]


def trend_bars(
    beliefs: Sequence[GaussianBelief], times: Sequence[float]
) -> list[tuple[float, float, float, float]]:
    """Per prediction: (time, center, low, high) with low/high = mean -/+ 3 std."""
    if len(beliefs) != len(times):
        raise ValueError("each belief needs a time coordinate")
    return [
        (float(t), b.mean, b.mean - 3.0 * b.std, b.mean + 3.0 * b.std)
        for t, b in zip(times, beliefs)
    ]


@dataclass(frozen=True)
class PlotSpec:
    """Declarative plot request resolved by the CLI against the store."""

    kind: str
    output: str
    industry: Optional[int] = None
    index: Optional[int] = None
    year: Optional[int] = None
    horizon: Optional[int] = None
    x_industry: Optional[int] = None
    x_index: Optional[int] = None
    y_industry: Optional[int] = None
    y_index: Optional[int] = None
    x_label: str = ""
    y_label: str = ""

    def __post_init__(self) -> None:
        required = {
            "distribution": ("industry", "index", "year"),
            "trend": ("industry", "index", "horizon"),
            "scatter": ("x_industry", "x_index", "y_industry", "y_index"),
        }
        if self.kind not in required:
            raise ValueError(f"unknown plot kind {self.kind!r}")
        missing = [f for f in required[self.kind] if getattr(self, f) is None]
        if missing:
            raise ValueError(f"{self.kind} plot needs fields: {', '.join(missing)}")
        if not self.output:
            raise ValueError("output path is required")

    @classmethod
    def from_dict(cls, data: dict) -> "PlotSpec":
        allowed = set(cls.__dataclass_fields__)
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown plot spec fields: {sorted(unknown)}")
        return cls(**data)


# --- rendering helpers ----------------------------------------------------------


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _num(v: float) -> str:
    return "%.6g" % v


class _Frame:
    """Affine map from data space onto the plot area (y grows upward)."""

    def __init__(self, width: float, height: float,
                 x_range: tuple[float, float], y_range: tuple[float, float]):
        self.width = width
        self.height = height
        x_lo, x_hi = x_range
        y_lo, y_hi = y_range
        if x_hi <= x_lo:
            x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
        if y_hi <= y_lo:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi
        self._sx = (width - 2 * MARGIN) / (x_hi - x_lo)
        self._sy = (height - 2 * MARGIN) / (y_hi - y_lo)

    def x(self, v: float) -> float:
        return MARGIN + (v - self.x_lo) * self._sx

    def y(self, v: float) -> float:
        return self.height - MARGIN - (v - self.y_lo) * self._sy

    def axes(self, x_label: str, y_label: str) -> list[str]:
        left, right = MARGIN, self.width - MARGIN
        top, bottom = MARGIN, self.height - MARGIN
        mid_x = (left + right) / 2.0
        mid_y = (top + bottom) / 2.0
        return [
            f'<line x1="{_fmt(left)}" y1="{_fmt(bottom)}" x2="{_fmt(right)}" y2="{_fmt(bottom)}" stroke="#333" stroke-width="1"/>',
            f'<line x1="{_fmt(left)}" y1="{_fmt(bottom)}" x2="{_fmt(left)}" y2="{_fmt(top)}" stroke="#333" stroke-width="1"/>',
            f'<text x="{_fmt(left)}" y="{_fmt(bottom + 18)}" font-size="11" text-anchor="middle">{_num(self.x_lo)}</text>',
            f'<text x="{_fmt(right)}" y="{_fmt(bottom + 18)}" font-size="11" text-anchor="middle">{_num(self.x_hi)}</text>',
            f'<text x="{_fmt(left - 8)}" y="{_fmt(bottom)}" font-size="11" text-anchor="end">{_num(self.y_lo)}</text>',
            f'<text x="{_fmt(left - 8)}" y="{_fmt(top + 4)}" font-size="11" text-anchor="end">{_num(self.y_hi)}</text>',
            f'<text x="{_fmt(mid_x)}" y="{_fmt(self.height - 12)}" font-size="12" text-anchor="middle">{_escape(x_label)}</text>',
            f'<text x="{_fmt(14)}" y="{_fmt(mid_y)}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {_fmt(mid_y)})">{_escape(y_label)}</text>',
        ]


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _document(width: float, height: float, body: list[str]) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _polyline(points: Sequence[tuple[float, float]], frame: _Frame, color: str) -> str:
    coords = " ".join(f"{_fmt(frame.x(x))},{_fmt(frame.y(y))}" for x, y in points)
    return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'


# --- emitters ----------------------------------------------------------------------


def emit_distribution_svg(
    belief: GaussianBelief,
    *,
    x_label: str = "value",
    y_label: str = "probability density",
    width: float = 640.0,
    height: float = 400.0,
    samples: int = DENSITY_SAMPLES,
) -> str:
    """Density curve of a Gaussian belief over mean +/- 4 std."""
    pts = density_samples(belief, samples)
    peak = max(p for _, p in pts)
    frame = _Frame(width, height, (pts[0][0], pts[-1][0]), (0.0, peak))
    body = [
        *frame.axes(x_label, y_label),
        _polyline(pts, frame, "#1f6fb2"),
        f'<line x1="{_fmt(frame.x(belief.mean))}" y1="{_fmt(frame.y(0.0))}" '
        f'x2="{_fmt(frame.x(belief.mean))}" y2="{_fmt(frame.y(gaussian_density(belief.mean, belief.mean, belief.std)))}" '
        'stroke="#999" stroke-width="1" stroke-dasharray="4 3"/>',
    ]
    return _document(width, height, body)


def emit_trend_svg(
    history,
    beliefs: Sequence[GaussianBelief],
    *,
    prediction_times: Optional[Sequence[float]] = None,
    x_label: str = "year",
    y_label: str = "value",
    width: float = 720.0,
    height: float = 420.0,
) -> str:
    """History polyline plus one gradient bar per predicted step.

    ``history`` is anything with ``times`` and ``values`` (a store series).
    Prediction times default to continuing the history's final spacing.
    """
    times = [float(t) for t in history.times]
    values = [float(v) for v in history.values]
    if prediction_times is None:
        if not times:
            raise ValueError("cannot infer prediction times from empty history")
        step = times[-1] - times[-2] if len(times) >= 2 else 1.0
        prediction_times = [times[-1] + step * (i + 1) for i in range(len(beliefs))]
    bars = trend_bars(beliefs, prediction_times)

    xs = times + [b[0] for b in bars]
    ys = values + [v for _, center, lo, hi in bars for v in (lo, hi, center)]
    if not xs:
        raise ValueError("nothing to plot")
    frame = _Frame(width, height, (min(xs), max(xs)), (min(ys), max(ys)))

    body = [
        "<defs>",
        '<linearGradient id="predbar" x1="0" y1="0" x2="0" y2="1">',
        '<stop offset="0%" stop-color="#d8863b" stop-opacity="0.15"/>',
        '<stop offset="50%" stop-color="#d8863b" stop-opacity="0.95"/>',
        '<stop offset="100%" stop-color="#d8863b" stop-opacity="0.15"/>',
        "</linearGradient>",
        "</defs>",
        *frame.axes(x_label, y_label),
    ]
    if len(values) >= 2:
        body.append(_polyline(list(zip(times, values)), frame, "#1f6fb2"))
    for t, v in zip(times, values):
        body.append(
            f'<circle cx="{_fmt(frame.x(t))}" cy="{_fmt(frame.y(v))}" r="2.5" fill="#1f6fb2"/>'
        )
    bar_w = 9.0
    for t, center, lo, hi in bars:
        x = frame.x(t)
        body.append(
            f'<rect x="{_fmt(x - bar_w / 2)}" y="{_fmt(frame.y(hi))}" '
            f'width="{_fmt(bar_w)}" height="{_fmt(frame.y(lo) - frame.y(hi))}" fill="url(#predbar)"/>'
        )
        body.append(
            f'<line x1="{_fmt(x - bar_w)}" y1="{_fmt(frame.y(center))}" '
            f'x2="{_fmt(x + bar_w)}" y2="{_fmt(frame.y(center))}" stroke="#7a3d00" stroke-width="1.5"/>'
        )
    return _document(width, height, body)


def emit_scatter_svg(
    xs: Sequence[float],
    ys: Sequence[float],
    *,
    x_label: str = "x",
    y_label: str = "y",
    width: float = 560.0,
    height: float = 560.0,
) -> str:
    """Scatter of two aligned series."""
    if len(xs) != len(ys):
        raise ValueError("scatter needs aligned series of equal length")
    if not xs:
        raise ValueError("nothing to plot")
    frame = _Frame(width, height, (min(xs), max(xs)), (min(ys), max(ys)))
    body = [*frame.axes(x_label, y_label)]
    for x, y in zip(xs, ys):
        body.append(
            f'<circle cx="{_fmt(frame.x(x))}" cy="{_fmt(frame.y(y))}" r="3" '
            'fill="none" stroke="#b23a1f" stroke-width="1.2"/>'
        )
    return _document(width, height, body)
