/**
 * Prediction explorer state and rendering. Top panel: the predicted
 * density of the displayed year. Bottom panel: history polyline plus one
 * gradient bar per predicted year spanning mean +/- 3 std with a marked
 * center. Changing the displayed year re-renders from cached beliefs;
 * only changing the series key requires a refetch.
 */
import { Belief, SeriesResponse } from "./api.js";

export interface ExplorerState {
  industry: number | null;
  index: number | null;
  horizon: number;
  /** Index into beliefs for the density panel. */
  displayed: number;
  history: SeriesResponse | null;
  beliefs: Belief[] | null;
  error: string | null;
}

export function initialExplorer(): ExplorerState {
  return {
    industry: null,
    index: null,
    horizon: 5,
    displayed: 0,
    history: null,
    beliefs: null,
    error: null,
  };
}

/** Changing the series key invalidates fetched data. */
export function selectSeries(
  state: ExplorerState,
  industry: number,
  index: number,
): ExplorerState {
  return { ...state, industry, index, history: null, beliefs: null, error: null, displayed: 0 };
}

export function needsFetch(state: ExplorerState): boolean {
  return (
    state.industry !== null &&
    state.index !== null &&
    state.history === null &&
    state.error === null
  );
}

export function dataLoaded(
  state: ExplorerState,
  history: SeriesResponse,
  beliefs: Belief[],
): ExplorerState {
  return { ...state, history, beliefs, displayed: 0, error: null };
}

export function loadFailed(state: ExplorerState, message: string): ExplorerState {
  return { ...state, error: message, history: null, beliefs: null };
}

/** Clamp the displayed year into the fetched horizon. */
export function showYear(state: ExplorerState, displayed: number): ExplorerState {
  if (!state.beliefs || state.beliefs.length === 0) return state;
  const clamped = Math.min(state.beliefs.length - 1, Math.max(0, displayed));
  return { ...state, displayed: clamped };
}

export function displayedBelief(state: ExplorerState): Belief | null {
  if (!state.beliefs || state.beliefs.length === 0) return null;
  return state.beliefs[state.displayed];
}

// --- geometry for the panels -------------------------------------------------

export function gaussianDensity(x: number, mean: number, std: number): number {
  const z = (x - mean) / std;
  return Math.exp(-0.5 * z * z) / (std * Math.sqrt(2 * Math.PI));
}

/** (x, pdf) samples over mean +/- 4 std. */
export function densitySamples(belief: Belief, samples = 240): [number, number][] {
  if (belief.std <= 0) throw new RangeError("density needs a positive std");
  const lo = belief.mean - 4 * belief.std;
  const hi = belief.mean + 4 * belief.std;
  const step = (hi - lo) / (samples - 1);
  const out: [number, number][] = [];
  for (let i = 0; i < samples; i++) {
    const x = lo + i * step;
    out.push([x, gaussianDensity(x, belief.mean, belief.std)]);
  }
  return out;
}

export interface TrendBar {
  time: number;
  center: number;
  low: number;
  high: number;
}

export function trendBarsOf(beliefs: Belief[]): TrendBar[] {
  return beliefs.map((b) => ({
    time: b.time,
    center: b.mean,
    low: b.mean - 3 * b.std,
    high: b.mean + 3 * b.std,
  }));
}

interface Frame {
  x: (v: number) => number;
  y: (v: number) => number;
}

function makeFrame(
  width: number,
  height: number,
  margin: number,
  xRange: [number, number],
  yRange: [number, number],
): Frame {
  const [xLo, xHi] = xRange[1] > xRange[0] ? xRange : [xRange[0] - 0.5, xRange[1] + 0.5];
  const [yLo, yHi] = yRange[1] > yRange[0] ? yRange : [yRange[0] - 0.5, yRange[1] + 0.5];
  const sx = (width - 2 * margin) / (xHi - xLo);
  const sy = (height - 2 * margin) / (yHi - yLo);
  return {
    x: (v) => margin + (v - xLo) * sx,
    y: (v) => height - margin - (v - yLo) * sy,
  };
}

const W = 640;
const H = 300;
const MARGIN = 40;

/** Density panel markup for the displayed year (empty-state aware). */
export function renderDensityPanel(state: ExplorerState): string {
  const belief = displayedBelief(state);
  if (!belief) {
    return `<p class="placeholder">${state.error ?? "Select an industry and index to predict."}</p>`;
  }
  const pts = densitySamples(belief);
  const peak = Math.max(...pts.map(([, p]) => p));
  const frame = makeFrame(W, H, MARGIN, [pts[0][0], pts[pts.length - 1][0]], [0, peak]);
  const path = pts.map(([x, p]) => `${frame.x(x).toFixed(2)},${frame.y(p).toFixed(2)}`) .join(" ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" class="density">` +
    `<polyline points="${path}" fill="none" class="curve"/>` +
    `<line x1="${frame.x(belief.mean).toFixed(2)}" y1="${frame.y(0).toFixed(2)}" ` +
    `x2="${frame.x(belief.mean).toFixed(2)}" y2="${frame.y(peak).toFixed(2)}" class="mean"/>` +
    `<text x="${W / 2}" y="${H - 8}" text-anchor="middle" class="axis">` +
    `year ${belief.time} — mean ${belief.mean.toFixed(3)}, std ${belief.std.toFixed(3)}</text>` +
    `</svg>`
  );
}

/** Trend panel markup: history polyline + prediction bars. */
export function renderTrendPanel(state: ExplorerState): string {
  if (!state.history || !state.beliefs) {
    return `<p class="placeholder">${state.error ?? "No series loaded."}</p>`;
  }
  const history = state.history.points;
  const bars = trendBarsOf(state.beliefs);
  const xs = [...history.map(([t]) => t), ...bars.map((b) => b.time)];
  const ys = [
    ...history.map(([, v]) => v),
    ...bars.flatMap((b) => [b.low, b.high]),
  ];
  const frame = makeFrame(W, H, MARGIN, [Math.min(...xs), Math.max(...xs)], [
    Math.min(...ys),
    Math.max(...ys),
  ]);
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" class="trend">`,
  ];
  if (history.length >= 2) {
    const path = history
      .map(([t, v]) => `${frame.x(t).toFixed(2)},${frame.y(v).toFixed(2)}`)
      .join(" ");
    parts.push(`<polyline points="${path}" fill="none" class="history"/>`);
  }
  for (const [t, v] of history) {
    parts.push(
      `<circle cx="${frame.x(t).toFixed(2)}" cy="${frame.y(v).toFixed(2)}" r="2.5" class="point"/>`,
    );
  }
  bars.forEach((bar, i) => {
    const x = frame.x(bar.time);
    const selected = i === state.displayed;
    parts.push(
      `<rect x="${(x - 4.5).toFixed(2)}" y="${frame.y(bar.high).toFixed(2)}" width="9" ` +
        `height="${(frame.y(bar.low) - frame.y(bar.high)).toFixed(2)}" ` +
        `class="bar${selected ? " shown" : ""}" data-step="${i}"/>`,
      `<line x1="${(x - 9).toFixed(2)}" y1="${frame.y(bar.center).toFixed(2)}" ` +
        `x2="${(x + 9).toFixed(2)}" y2="${frame.y(bar.center).toFixed(2)}" class="bar-center"/>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}
