/**
 * Correlation explorer: pick two (industry, index) pairs, send the
 * aligned overlap to the service, display the three coefficients. The
 * numbers shown are the service's values formatted at 15 significant
 * digits; the panel never computes statistics itself.
 */
import { ApiClient, CorrelateResponse } from "./api.js";
import { fmt15 } from "./format.js";

export interface PairKey {
  industry: number;
  index: number;
}

export interface CorrelationState {
  x: PairKey | null;
  y: PairKey | null;
  report: CorrelateResponse | null;
  error: string | null;
}

export function initialCorrelation(): CorrelationState {
  return { x: null, y: null, report: null, error: null };
}

export function selectPairs(
  state: CorrelationState,
  x: PairKey,
  y: PairKey,
): CorrelationState {
  return { x, y, report: null, error: null };
}

export function canAnalyze(state: CorrelationState): boolean {
  return state.x !== null && state.y !== null;
}

export async function analyze(
  state: CorrelationState,
  client: ApiClient,
): Promise<CorrelationState> {
  if (!state.x || !state.y) {
    return { ...state, error: "choose both series first" };
  }
  try {
    const report = await client.correlate({ x: state.x, y: state.y });
    return { ...state, report, error: null };
  } catch (err) {
    return { ...state, report: null, error: err instanceof Error ? err.message : String(err) };
  }
}

export interface CoefficientLine {
  label: string;
  text: string;
}

/** The three labeled coefficient lines, digits matching the service. */
export function coefficientLines(report: CorrelateResponse): CoefficientLine[] {
  const coef = (v: number | null) => (v === null ? "undefined" : fmt15(v));
  return [
    { label: "Pearson Correlation Coefficient", text: coef(report.pearson) },
    { label: "Kendall's Tau Correlation Coefficient", text: coef(report.kendall_tau) },
    { label: "Spearman Rank Correlation", text: coef(report.spearman) },
  ];
}

export function renderCorrelationView(state: CorrelationState): string {
  if (state.error) return `<p class="error">${state.error}</p>`;
  if (!state.report) return `<p class="placeholder">Pick X and Y series, then analyze.</p>`;
  const rows = coefficientLines(state.report)
    .map((line) => `<div class="coef"><span>${line.label}:</span> <b>${line.text}</b></div>`)
    .join("");
  return `<pre class="report">${state.report.report}</pre>${rows}`;
}
