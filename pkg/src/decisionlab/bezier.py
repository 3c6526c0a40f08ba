"""Cubic Bézier curves: evaluation, splitting, flattening, hit-testing.

The curve through control points ``P0..P3`` is

    B(t) = (1-t)^3 P0 + 3(1-t)^2 t P1 + 3(1-t) t^2 P2 + t^3 P3,  t in [0, 1].

Flattening subdivides recursively until each piece's control polygon stays
within a chord tolerance, so vertices cluster where curvature demands them
instead of being spaced uniformly in ``t``.  Hit-testing measures the
distance from a point to the flattened polyline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ParameterOutOfRange

Point = tuple[float, float]

#: Default chord tolerance for flattening, in drawing units.
FLATTEN_TOLERANCE = 0.25

_MAX_DEPTH = 48  # recursion guard; each split shrinks deviation ~4x


def _as_point(p: Sequence[float]) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"point coordinates must be finite, got {p!r}")
    return (x, y)


@dataclass(frozen=True)
class CubicBezier:
    """Immutable cubic curve; ``p1``/``p2`` are the draggable anchors."""

    p0: Point
    p1: Point
    p2: Point
    p3: Point

    def __post_init__(self) -> None:
        for name in ("p0", "p1", "p2", "p3"):
            object.__setattr__(self, name, _as_point(getattr(self, name)))

    @property
    def control_points(self) -> tuple[Point, Point, Point, Point]:
        return (self.p0, self.p1, self.p2, self.p3)


def line_as_bezier(start: Sequence[float], end: Sequence[float]) -> CubicBezier:
    """Cubic representation of a straight segment.

    Anchors sit at the chord's 1/3 and 2/3 points, so toggling a straight
    relation line to curved starts from a curve that coincides with it.
    """
    p0 = _as_point(start)
    p3 = _as_point(end)
    p1 = (p0[0] + (p3[0] - p0[0]) / 3.0, p0[1] + (p3[1] - p0[1]) / 3.0)
    p2 = (p0[0] + 2.0 * (p3[0] - p0[0]) / 3.0, p0[1] + 2.0 * (p3[1] - p0[1]) / 3.0)
    return CubicBezier(p0, p1, p2, p3)


def evaluate(curve: CubicBezier, t: float) -> Point:
    """Point on the curve at parameter ``t`` in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ParameterOutOfRange(f"t must lie in [0, 1], got {t}")
    mt = 1.0 - t
    w0 = mt * mt * mt
    w1 = 3.0 * mt * mt * t
    w2 = 3.0 * mt * t * t
    w3 = t * t * t
    p0, p1, p2, p3 = curve.control_points
    return (
        w0 * p0[0] + w1 * p1[0] + w2 * p2[0] + w3 * p3[0],
        w0 * p0[1] + w1 * p1[1] + w2 * p2[1] + w3 * p3[1],
    )


def _lerp(a: Point, b: Point, t: float) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def split(curve: CubicBezier, t: float) -> tuple[CubicBezier, CubicBezier]:
    """De Casteljau subdivision into two cubics meeting at ``B(t)``."""
    if not 0.0 < t < 1.0:
        raise ParameterOutOfRange(f"split parameter must lie in (0, 1), got {t}")
    p0, p1, p2, p3 = curve.control_points
    q0 = _lerp(p0, p1, t)
    q1 = _lerp(p1, p2, t)
    q2 = _lerp(p2, p3, t)
    r0 = _lerp(q0, q1, t)
    r1 = _lerp(q1, q2, t)
    s = _lerp(r0, r1, t)
    return CubicBezier(p0, q0, r0, s), CubicBezier(s, r1, q2, p3)


def point_segment_distance(point: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    """Distance from ``point`` to segment ``ab`` (handles degenerate segments)."""
    px, py = float(point[0]), float(point[1])
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay)
    u = ((px - ax) * dx + (py - ay) * dy) / seg2
    u = min(1.0, max(0.0, u))
    return math.hypot(px - (ax + u * dx), py - (ay + u * dy))


def _is_flat(curve: CubicBezier, tolerance: float) -> bool:
    # Control polygon never strays further from the chord than the curve,
    # so chord deviation of p1/p2 bounds the flattening error.
    return (
        point_segment_distance(curve.p1, curve.p0, curve.p3) < tolerance
        and point_segment_distance(curve.p2, curve.p0, curve.p3) < tolerance
    )


def flatten_with_params(
    curve: CubicBezier, tolerance: float = FLATTEN_TOLERANCE
) -> list[tuple[float, Point]]:
    """Flatten to ``(t, point)`` vertices; every vertex lies on the curve."""
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")

    out: list[tuple[float, Point]] = [(0.0, curve.p0)]

    def recurse(piece: CubicBezier, t0: float, t1: float, depth: int) -> None:
        if depth >= _MAX_DEPTH or _is_flat(piece, tolerance):
            out.append((t1, piece.p3))
            return
        left, right = split(piece, 0.5)
        tm = (t0 + t1) / 2.0
        recurse(left, t0, tm, depth + 1)
        recurse(right, tm, t1, depth + 1)

    recurse(curve, 0.0, 1.0, 0)
    return out


def flatten(curve: CubicBezier, tolerance: float = FLATTEN_TOLERANCE) -> list[Point]:
    """Polyline approximation within ``tolerance`` of the curve.

    First and last vertices are exactly ``p0``/``p3``; a straight control
    polygon flattens to just those two.
    """
    return [point for _, point in flatten_with_params(curve, tolerance)]


class HitResult(NamedTuple):
    hit: bool
    distance: float


def hit_test(
    curve: CubicBezier,
    point: Sequence[float],
    threshold: float,
    tolerance: float = FLATTEN_TOLERANCE,
) -> HitResult:
    """Whether ``point`` lies within ``threshold`` of the curve.

    The reported distance is measured against the flattened polyline and is
    therefore accurate to within the flatten tolerance.
    """
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    vertices = flatten(curve, tolerance)
    if len(vertices) == 1:
        distance = math.hypot(point[0] - vertices[0][0], point[1] - vertices[0][1])
    else:
        distance = min(
            point_segment_distance(point, a, b)
            for a, b in zip(vertices, vertices[1:])
        )
    return HitResult(distance <= threshold, distance)


def bounding_box(curve: CubicBezier) -> tuple[float, float, float, float]:
    """Axis-aligned box of the control points (contains the whole curve)."""
    xs = [p[0] for p in curve.control_points]
    ys = [p[1] for p in curve.control_points]
    return (min(xs), min(ys), max(xs), max(ys))
