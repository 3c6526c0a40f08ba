/**
 * Workbench shell: four tabs (Templates, Prediction, Correlation, MDP)
 * wired to the panel state modules. This layer only moves events into
 * reducers and state back into the DOM; all behavior lives in the
 * imported modules where it is unit-tested.
 */
import { ApiClient } from "./api.js";
import {
  CanvasState,
  documentOf,
  initialState,
  pointerDown,
  pointerMove,
  pointerUp,
  renderSvg,
  saved,
  toWorld,
  toggleCurve,
} from "./canvas.js";
import {
  CorrelationState,
  analyze,
  initialCorrelation,
  renderCorrelationView,
  selectPairs,
} from "./correlation.js";
import {
  ExplorerState,
  dataLoaded,
  initialExplorer,
  loadFailed,
  needsFetch,
  renderDensityPanel,
  renderTrendPanel,
  selectSeries,
  showYear,
} from "./prediction.js";
import {
  MdpPanelState,
  newPanel,
  renderMdpView,
  setGamma,
  setReward,
  setTransitionRow,
  solve,
} from "./mdpPanel.js";
import { parse } from "./templates.js";

const SERVICE_URL =
  new URLSearchParams(window.location.search).get("service") ?? "http://127.0.0.1:8080";
const client = new ApiClient(SERVICE_URL);

const $ = <T extends HTMLElement>(selector: string): T => {
  const el = document.querySelector<T>(selector);
  if (!el) throw new Error(`missing element ${selector}`);
  return el;
};

// --- tabs -----------------------------------------------------------------

function initTabs(): void {
  const buttons = Array.from(document.querySelectorAll<HTMLButtonElement>("nav button"));
  for (const button of buttons) {
    button.addEventListener("click", () => {
      for (const other of buttons) other.classList.toggle("active", other === button);
      for (const panel of Array.from(document.querySelectorAll<HTMLElement>("main section"))) {
        panel.hidden = panel.id !== button.dataset.panel;
      }
    });
  }
}

// --- templates tab -----------------------------------------------------------

const BLANK_TEMPLATE = `template v1
node g1 goal 420.0 80.0 goal
node s1 solution 140.0 300.0 solution
node c1 condition 640.0 320.0 condition
relation s1 g1 support=1.0 curved=0
relation c1 g1 support=0.5 curved=0
`;

function initTemplates(): void {
  let state: CanvasState = initialState(parse(BLANK_TEMPLATE));
  const host = $("#canvas-host");
  const status = $("#canvas-status");
  const idInput = $<HTMLInputElement>("#template-id");

  const redraw = () => {
    host.innerHTML = renderSvg(state);
    status.textContent = state.dirty ? "unsaved changes" : "saved";
  };

  const persist = async () => {
    if (!state.dirty) return;
    try {
      await client.putTemplate(idInput.value || "default", documentOf(state));
      state = saved(state);
    } catch (err) {
      status.textContent = `save failed, retry: ${err}`;
      return;
    }
    redraw();
  };

  const eventPoint = (event: PointerEvent) => {
    const rect = host.getBoundingClientRect();
    return toWorld(state, { x: event.clientX - rect.left, y: event.clientY - rect.top });
  };

  host.addEventListener("pointerdown", (event) => {
    state = pointerDown(state, eventPoint(event));
    redraw();
  });
  host.addEventListener("pointermove", (event) => {
    if (!state.drag) return;
    state = pointerMove(state, eventPoint(event));
    redraw();
  });
  host.addEventListener("pointerup", () => {
    const wasDragging = state.drag !== null;
    state = pointerUp(state);
    if (wasDragging) void persist();
    redraw();
  });

  $("#curve-toggle").addEventListener("click", () => {
    if (state.selection?.kind === "relation") {
      state = toggleCurve(state, state.selection.index);
      void persist();
      redraw();
    }
  });

  $("#template-load").addEventListener("click", async () => {
    try {
      const text = await client.getTemplate(idInput.value || "default");
      state = initialState(parse(text));
      redraw();
    } catch (err) {
      status.textContent = String(err);
    }
  });
  $("#template-save").addEventListener("click", () => {
    state = { ...state, dirty: true };
    void persist();
  });

  redraw();
}

// --- prediction tab ------------------------------------------------------------

function initPrediction(): void {
  let state: ExplorerState = initialExplorer();
  const density = $("#density-panel");
  const trend = $("#trend-panel");
  const year = $<HTMLInputElement>("#year-slider");

  const redraw = () => {
    density.innerHTML = renderDensityPanel(state);
    trend.innerHTML = renderTrendPanel(state);
    year.max = String(Math.max(0, (state.beliefs?.length ?? 1) - 1));
    year.value = String(state.displayed);
  };

  const fetchData = async () => {
    if (!needsFetch(state)) return;
    try {
      const [history, prediction] = await Promise.all([
        client.series(state.industry!, state.index!),
        client.predictGaussian(state.industry!, state.index!, state.horizon),
      ]);
      state = dataLoaded(state, history, prediction.beliefs);
    } catch (err) {
      state = loadFailed(state, err instanceof Error ? err.message : String(err));
    }
    redraw();
  };

  $("#predict-go").addEventListener("click", () => {
    const industry = Number($<HTMLInputElement>("#predict-industry").value);
    const index = Number($<HTMLInputElement>("#predict-index").value);
    state = selectSeries(state, industry, index);
    void fetchData();
  });
  year.addEventListener("input", () => {
    state = showYear(state, Number(year.value));
    redraw();
  });

  redraw();
}

// --- correlation tab --------------------------------------------------------------

function initCorrelation(): void {
  let state: CorrelationState = initialCorrelation();
  const view = $("#correlation-view");

  $("#correlate-go").addEventListener("click", async () => {
    state = selectPairs(
      state,
      {
        industry: Number($<HTMLInputElement>("#x-industry").value),
        index: Number($<HTMLInputElement>("#x-index").value),
      },
      {
        industry: Number($<HTMLInputElement>("#y-industry").value),
        index: Number($<HTMLInputElement>("#y-index").value),
      },
    );
    state = await analyze(state, client);
    view.innerHTML = renderCorrelationView(state);
  });

  view.innerHTML = renderCorrelationView(state);
}

// --- mdp tab ------------------------------------------------------------------------

function initMdp(): void {
  let state: MdpPanelState = newPanel(["s0", "s1"], ["a0", "a1"]);
  const grid = $("#mdp-grid");
  const view = $("#mdp-view");

  const redraw = () => {
    const n = state.states.length;
    const rows: string[] = [];
    rows.push(
      `<label>gamma <input id="mdp-gamma" value="${state.gamma}" size="6"></label>`,
    );
    state.states.forEach((name, s) => {
      rows.push(
        `<label>${name} reward <input data-reward="${s}" value="${state.rewards[s]}" size="6"></label>`,
      );
    });
    state.states.forEach((sname, s) => {
      state.actions.forEach((aname, a) => {
        rows.push(
          `<label>T(${sname}, ${aname}) <input data-row="${s}:${a}" ` +
            `value="${state.transitions[s][a].join(" ")}" size="${6 * n}"></label>`,
        );
      });
    });
    grid.innerHTML = rows.join("<br>");
    view.innerHTML = renderMdpView(state);
  };

  grid.addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    if (input.id === "mdp-gamma") {
      state = setGamma(state, Number(input.value));
    } else if (input.dataset.reward !== undefined) {
      state = setReward(state, Number(input.dataset.reward), Number(input.value));
    } else if (input.dataset.row !== undefined) {
      const [s, a] = input.dataset.row.split(":").map(Number);
      state = setTransitionRow(state, s, a, input.value.trim().split(/\s+/).map(Number));
    }
    view.innerHTML = renderMdpView(state);
  });

  $("#mdp-solve").addEventListener("click", async () => {
    state = await solve(state, client);
    view.innerHTML = renderMdpView(state);
  });

  redraw();
}

initTabs();
initTemplates();
initPrediction();
initCorrelation();
initMdp();
