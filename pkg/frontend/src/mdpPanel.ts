/**
 * MDP authoring panel. The analyst edits per-action transition rows and
 * per-state rewards (states often come from leveling labels), the panel
 * flags non-stochastic rows before submission, and Solve hands the model
 * to the service. Results render exactly like the CLI's solver output so
 * the two interfaces can be compared line by line; the model also exports
 * to the CLI's text format.
 */
import { ApiClient, MdpSolveResponse } from "./api.js";
import { fmtUtility } from "./format.js";

export interface MdpPanelState {
  states: string[];
  actions: string[];
  gamma: number;
  rewards: number[];
  /** transitions[state][action][next state] */
  transitions: number[][][];
  result: MdpSolveResponse | null;
  error: string | null;
}

export const ROW_SUM_TOL = 1e-9;

function uniformRow(n: number): number[] {
  return Array.from({ length: n }, () => 1 / n);
}

export function newPanel(states: string[], actions: string[], gamma = 0.9): MdpPanelState {
  const n = states.length;
  return {
    states: [...states],
    actions: [...actions],
    gamma,
    rewards: states.map(() => 0),
    transitions: states.map(() => actions.map(() => uniformRow(n))),
    result: null,
    error: null,
  };
}

export function setReward(state: MdpPanelState, s: number, value: number): MdpPanelState {
  const rewards = [...state.rewards];
  rewards[s] = value;
  return { ...state, rewards, result: null };
}

export function setGamma(state: MdpPanelState, gamma: number): MdpPanelState {
  return { ...state, gamma, result: null };
}

export function setTransitionRow(
  state: MdpPanelState,
  s: number,
  a: number,
  row: number[],
): MdpPanelState {
  const transitions = state.transitions.map((perState, si) =>
    si === s
      ? perState.map((perAction, ai) => (ai === a ? [...row] : perAction))
      : perState,
  );
  return { ...state, transitions, result: null };
}

export interface RowIssue {
  state: number;
  action: number;
  sum: number;
}

/** Rows whose probabilities do not form a distribution (flagged inline). */
export function invalidRows(state: MdpPanelState): RowIssue[] {
  const issues: RowIssue[] = [];
  state.transitions.forEach((perState, s) => {
    perState.forEach((row, a) => {
      const sum = row.reduce((acc, v) => acc + v, 0);
      if (row.some((v) => v < 0) || Math.abs(sum - 1) > ROW_SUM_TOL) {
        issues.push({ state: s, action: a, sum });
      }
    });
  });
  return issues;
}

export async function solve(
  state: MdpPanelState,
  client: ApiClient,
): Promise<MdpPanelState> {
  const issues = invalidRows(state);
  if (issues.length > 0) {
    const first = issues[0];
    return {
      ...state,
      result: null,
      error:
        `row (${state.states[first.state]}, ${state.actions[first.action]}) ` +
        `sums to ${first.sum}, expected 1`,
    };
  }
  try {
    const result = await client.solveMdp({
      gamma: state.gamma,
      rewards: state.rewards,
      transitions: state.transitions,
      states: state.states,
      actions: state.actions,
    });
    return { ...state, result, error: null };
  } catch (err) {
    return { ...state, result: null, error: err instanceof Error ? err.message : String(err) };
  }
}

/**
 * Per-state result lines in the CLI solver's exact layout
 * (`<state>: U=<utility to 6 decimals> action=<name>`).
 */
export function resultLines(result: MdpSolveResponse): string[] {
  return result.states.map(
    (name, s) =>
      `${name}: U=${fmtUtility(result.utilities[s])} action=${result.actions[result.policy[s]]}`,
  );
}

function fnum(v: number): string {
  return Number.isInteger(v) ? `${v}.0` : String(v);
}

/** Export the authored model in the solver CLI's text format. */
export function exportSpecText(state: MdpPanelState): string {
  const lines = ["STATES", ...state.states, "ACTIONS", ...state.actions];
  lines.push("GAMMA", fnum(state.gamma));
  lines.push("REWARDS", ...state.rewards.map(fnum));
  lines.push("TRANSITION");
  for (let s = 0; s < state.states.length; s++) {
    for (let a = 0; a < state.actions.length; a++) {
      lines.push(state.transitions[s][a].map(fnum).join(" "));
    }
  }
  return lines.join("\n") + "\n";
}

export function renderMdpView(state: MdpPanelState): string {
  if (state.error) return `<p class="error">${state.error}</p>`;
  if (!state.result) return `<p class="placeholder">Author the model, then solve.</p>`;
  const rows = resultLines(state.result)
    .map((line) => `<div class="mdp-row">${line}</div>`)
    .join("");
  return `<div class="mdp-result">${rows}<div class="meta">converged in ${state.result.iterations} iterations</div></div>`;
}
