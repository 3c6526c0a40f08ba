/**
 * Cubic Bézier geometry for the canvas: evaluation, adaptive flattening,
 * and hit-testing.
 *
 * This mirrors the service's geometry contract (same flatten tolerance,
 * same chord-deviation rule) so that what a click selects in the browser
 * is what the backend would select. Evaluation runs client-side because
 * drag feedback cannot wait on a round trip.
 */

export interface Point {
  x: number;
  y: number;
}

export interface Cubic {
  p0: Point;
  p1: Point;
  p2: Point;
  p3: Point;
}

/** Chord tolerance used by flattening and therefore by hit distances. */
export const FLATTEN_TOLERANCE = 0.25;

const MAX_DEPTH = 48;

export function evaluate(curve: Cubic, t: number): Point {
  if (t < 0 || t > 1) throw new RangeError(`t must lie in [0, 1], got ${t}`);
  const mt = 1 - t;
  const w0 = mt * mt * mt;
  const w1 = 3 * mt * mt * t;
  const w2 = 3 * mt * t * t;
  const w3 = t * t * t;
  return {
    x: w0 * curve.p0.x + w1 * curve.p1.x + w2 * curve.p2.x + w3 * curve.p3.x,
    y: w0 * curve.p0.y + w1 * curve.p1.y + w2 * curve.p2.y + w3 * curve.p3.y,
  };
}

function lerp(a: Point, b: Point, t: number): Point {
  return { x: a.x + (b.x - a.x) * t, y: a.y + (b.y - a.y) * t };
}

export function split(curve: Cubic, t: number): [Cubic, Cubic] {
  if (t <= 0 || t >= 1) throw new RangeError(`split parameter must lie in (0, 1), got ${t}`);
  const q0 = lerp(curve.p0, curve.p1, t);
  const q1 = lerp(curve.p1, curve.p2, t);
  const q2 = lerp(curve.p2, curve.p3, t);
  const r0 = lerp(q0, q1, t);
  const r1 = lerp(q1, q2, t);
  const s = lerp(r0, r1, t);
  return [
    { p0: curve.p0, p1: q0, p2: r0, p3: s },
    { p0: s, p1: r1, p2: q2, p3: curve.p3 },
  ];
}

export function pointSegmentDistance(p: Point, a: Point, b: Point): number {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const seg2 = dx * dx + dy * dy;
  if (seg2 === 0) return Math.hypot(p.x - a.x, p.y - a.y);
  let u = ((p.x - a.x) * dx + (p.y - a.y) * dy) / seg2;
  u = Math.min(1, Math.max(0, u));
  return Math.hypot(p.x - (a.x + u * dx), p.y - (a.y + u * dy));
}

function isFlat(curve: Cubic, tolerance: number): boolean {
  return (
    pointSegmentDistance(curve.p1, curve.p0, curve.p3) < tolerance &&
    pointSegmentDistance(curve.p2, curve.p0, curve.p3) < tolerance
  );
}

/** Polyline within `tolerance` of the curve; vertices lie on the curve. */
export function flatten(curve: Cubic, tolerance: number = FLATTEN_TOLERANCE): Point[] {
  if (tolerance <= 0) throw new RangeError(`tolerance must be positive, got ${tolerance}`);
  const out: Point[] = [curve.p0];
  const recurse = (piece: Cubic, depth: number): void => {
    if (depth >= MAX_DEPTH || isFlat(piece, tolerance)) {
      out.push(piece.p3);
      return;
    }
    const [left, right] = split(piece, 0.5);
    recurse(left, depth + 1);
    recurse(right, depth + 1);
  };
  recurse(curve, 0);
  return out;
}

export interface HitResult {
  hit: boolean;
  distance: number;
}

export function hitTest(
  curve: Cubic,
  point: Point,
  threshold: number,
  tolerance: number = FLATTEN_TOLERANCE,
): HitResult {
  if (threshold <= 0) throw new RangeError(`threshold must be positive, got ${threshold}`);
  const vertices = flatten(curve, tolerance);
  let distance = Infinity;
  if (vertices.length === 1) {
    distance = Math.hypot(point.x - vertices[0].x, point.y - vertices[0].y);
  } else {
    for (let i = 0; i + 1 < vertices.length; i++) {
      const d = pointSegmentDistance(point, vertices[i], vertices[i + 1]);
      if (d < distance) distance = d;
    }
  }
  return { hit: distance <= threshold, distance };
}

/** Cubic tracing the straight segment: anchors at the chord's thirds. */
export function lineAsCubic(start: Point, end: Point): Cubic {
  return {
    p0: { ...start },
    p1: { x: start.x + (end.x - start.x) / 3, y: start.y + (end.y - start.y) / 3 },
    p2: {
      x: start.x + (2 * (end.x - start.x)) / 3,
      y: start.y + (2 * (end.y - start.y)) / 3,
    },
    p3: { ...end },
  };
}
