// Geometry twin checks: values frozen from the service's geometry module
// so client-side rendering agrees with backend hit-testing.
import { describe, expect, it } from "vitest";

import {
  Cubic,
  FLATTEN_TOLERANCE,
  evaluate,
  flatten,
  hitTest,
  lineAsCubic,
  pointSegmentDistance,
  split,
} from "../src/bezier.js";

const CURVE: Cubic = {
  p0: { x: 420, y: 210 },
  p1: { x: 400, y: 120 },
  p2: { x: 330, y: 60 },
  p3: { x: 260, y: 40 },
};

describe("evaluate", () => {
  it("matches the service geometry at frozen parameters", () => {
    const at37 = evaluate(CURVE, 0.37);
    expect(at37.x).toBeCloseTo(379.79765, 12);
    expect(at37.y).toBeCloseTo(122.92753000000002, 12);
    const mid = evaluate(CURVE, 0.5);
    expect(mid).toEqual({ x: 358.75, y: 98.75 });
  });

  it("hits the endpoints exactly", () => {
    expect(evaluate(CURVE, 0)).toEqual(CURVE.p0);
    expect(evaluate(CURVE, 1)).toEqual(CURVE.p3);
  });

  it("rejects parameters outside [0, 1]", () => {
    expect(() => evaluate(CURVE, -0.1)).toThrow(RangeError);
    expect(() => evaluate(CURVE, 1.1)).toThrow(RangeError);
  });
});

describe("split", () => {
  it("is continuous at the split point", () => {
    const [left, right] = split(CURVE, 0.5);
    expect(left.p3).toEqual(right.p0);
    expect(left.p3).toEqual(evaluate(CURVE, 0.5));
  });

  it("reparameterizes both halves", () => {
    const t = 0.3;
    const [left, right] = split(CURVE, t);
    for (let i = 0; i <= 10; i++) {
      const u = i / 10;
      const fromLeft = evaluate(left, u);
      const direct = evaluate(CURVE, t * u);
      expect(Math.hypot(fromLeft.x - direct.x, fromLeft.y - direct.y)).toBeLessThan(1e-9);
      const fromRight = evaluate(right, u);
      const directRight = evaluate(CURVE, t + (1 - t) * u);
      expect(Math.hypot(fromRight.x - directRight.x, fromRight.y - directRight.y)).toBeLessThan(1e-9);
    }
  });
});

describe("flatten", () => {
  it("matches the service's vertex count at the shared tolerance", () => {
    expect(FLATTEN_TOLERANCE).toBe(0.25);
    expect(flatten(CURVE, 0.25)).toHaveLength(17);
  });

  it("reduces straight control polygons to the chord", () => {
    const line = lineAsCubic({ x: 0, y: 0 }, { x: 10, y: 5 });
    expect(flatten(line, 0.25)).toEqual([
      { x: 0, y: 0 },
      { x: 10, y: 5 },
    ]);
  });

  it("refines monotonically with tighter tolerance", () => {
    const counts = [2, 0.5, 0.1].map((tol) => flatten(CURVE, tol).length);
    expect(counts).toEqual([...counts].sort((a, b) => a - b));
  });
});

describe("hitTest", () => {
  it("matches the service's frozen distance", () => {
    const result = hitTest(CURVE, { x: 340, y: 80 }, 10);
    expect(result.hit).toBe(true);
    expect(result.distance).toBeCloseTo(1.5815898675979359, 9);
  });

  it("hits points on the curve and misses far points", () => {
    const on = evaluate(CURVE, 0.62);
    expect(hitTest(CURVE, on, 1).hit).toBe(true);
    expect(hitTest(CURVE, { x: 0, y: 500 }, 10).hit).toBe(false);
  });

  it("treats straight lines exactly like segments", () => {
    const a = { x: 3, y: 4 };
    const b = { x: 90, y: -20 };
    const probe = { x: 40, y: 10 };
    const viaCurve = hitTest(lineAsCubic(a, b), probe, 50).distance;
    expect(Math.abs(viaCurve - pointSegmentDistance(probe, a, b))).toBeLessThan(1e-9);
  });
});
