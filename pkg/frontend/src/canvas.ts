/**
 * Template canvas state machine. Pure reducers, no DOM: pointer events
 * come in as world coordinates, a new state comes out, and the app layer
 * renders the returned state and persists on drag release.
 *
 * Selection and anchor semantics: clicking within the hit threshold of a
 * relation selects it; a selected straight line offers a "Curve" toggle;
 * toggling places the two anchors on the chord thirds so the curve starts
 * out coincident with the line; dragging an anchor reshapes the cubic
 * live; releasing marks the graph dirty for a save.
 */
import { Point, evaluate, hitTest, lineAsCubic } from "./bezier.js";
import {
  RelationLine,
  TemplateGraph,
  nodeById,
  relationCurve,
  serialize,
} from "./templates.js";

export const HIT_THRESHOLD = 6.0;
export const NODE_RADIUS = 22.0;
export const ANCHOR_RADIUS = 5.0;

export type Selection =
  | { kind: "node"; id: string }
  | { kind: "relation"; index: number }
  | null;

export type DragTarget =
  | { kind: "node"; id: string; offset: Point }
  | { kind: "anchor"; relation: number; anchor: 0 | 1 }
  | null;

export interface Viewport {
  offsetX: number;
  offsetY: number;
  scale: number;
}

export interface CanvasState {
  graph: TemplateGraph;
  selection: Selection;
  drag: DragTarget;
  viewport: Viewport;
  /** True when local edits have not been persisted yet. */
  dirty: boolean;
}

export function initialState(graph: TemplateGraph): CanvasState {
  return {
    graph,
    selection: null,
    drag: null,
    viewport: { offsetX: 0, offsetY: 0, scale: 1 },
    dirty: false,
  };
}

export function toWorld(state: CanvasState, screen: Point): Point {
  const { offsetX, offsetY, scale } = state.viewport;
  return { x: (screen.x - offsetX) / scale, y: (screen.y - offsetY) / scale };
}

function cloneGraph(graph: TemplateGraph): TemplateGraph {
  return {
    nodes: graph.nodes.map((n) => ({ ...n })),
    relations: graph.relations.map((r) => ({
      ...r,
      anchors: r.anchors
        ? ([{ ...r.anchors[0] }, { ...r.anchors[1] }] as [Point, Point])
        : null,
    })),
  };
}

function anchorAt(state: CanvasState, point: Point): DragTarget {
  // anchors are draggable only while their (curved) relation is selected
  if (!state.selection || state.selection.kind !== "relation") return null;
  const index = state.selection.index;
  const relation = state.graph.relations[index];
  if (!relation.curved || !relation.anchors) return null;
  for (const which of [0, 1] as const) {
    const a = relation.anchors[which];
    if (Math.hypot(point.x - a.x, point.y - a.y) <= ANCHOR_RADIUS + 2) {
      return { kind: "anchor", relation: index, anchor: which };
    }
  }
  return null;
}

/** Pointer press: grab an anchor, a node, or select/deselect a relation. */
export function pointerDown(state: CanvasState, point: Point): CanvasState {
  const anchor = anchorAt(state, point);
  if (anchor) return { ...state, drag: anchor };

  for (const node of state.graph.nodes) {
    if (Math.hypot(point.x - node.x, point.y - node.y) <= NODE_RADIUS) {
      return {
        ...state,
        selection: { kind: "node", id: node.id },
        drag: {
          kind: "node",
          id: node.id,
          offset: { x: point.x - node.x, y: point.y - node.y },
        },
      };
    }
  }

  let bestIndex = -1;
  let bestDistance = Infinity;
  for (let index = 0; index < state.graph.relations.length; index++) {
    const curve = relationCurve(state.graph, state.graph.relations[index]);
    const result = hitTest(curve, point, HIT_THRESHOLD);
    if (result.hit && result.distance < bestDistance) {
      bestIndex = index;
      bestDistance = result.distance;
    }
  }
  if (bestIndex >= 0) {
    return { ...state, selection: { kind: "relation", index: bestIndex }, drag: null };
  }
  return { ...state, selection: null, drag: null };
}

/** Pointer move: live-update the dragged node or anchor. */
export function pointerMove(state: CanvasState, point: Point): CanvasState {
  if (!state.drag) return state;
  const graph = cloneGraph(state.graph);
  if (state.drag.kind === "node") {
    const node = nodeById(graph, state.drag.id);
    node.x = point.x - state.drag.offset.x;
    node.y = point.y - state.drag.offset.y;
  } else {
    const relation = graph.relations[state.drag.relation];
    if (relation.anchors) {
      relation.anchors[state.drag.anchor] = { x: point.x, y: point.y };
    }
  }
  return { ...state, graph, dirty: true };
}

/** Pointer release: stop dragging; caller persists when dirty. */
export function pointerUp(state: CanvasState): CanvasState {
  return state.drag ? { ...state, drag: null } : state;
}

/**
 * Toggle the selected relation between straight and curved. Turning a
 * straight line curved seeds the anchors on the chord thirds, so the
 * rendered curve coincides with the previous line until dragged.
 */
export function toggleCurve(state: CanvasState, index: number): CanvasState {
  const graph = cloneGraph(state.graph);
  const relation = graph.relations[index];
  if (relation.curved) {
    relation.curved = false;
  } else {
    relation.curved = true;
    if (!relation.anchors) {
      const chord = lineAsCubic(
        nodePoint(graph, relation.from),
        nodePoint(graph, relation.to),
      );
      relation.anchors = [chord.p1, chord.p2];
    }
  }
  return { ...state, graph, dirty: true };
}

function nodePoint(graph: TemplateGraph, id: string): Point {
  const node = nodeById(graph, id);
  return { x: node.x, y: node.y };
}

/** Document to persist; clears the dirty flag via `saved`. */
export function documentOf(state: CanvasState): string {
  return serialize(state.graph);
}

export function saved(state: CanvasState): CanvasState {
  return { ...state, dirty: false };
}

// --- rendering ---------------------------------------------------------------

const NODE_SHAPES: Record<string, (x: number, y: number) => string> = {
  goal: (x, y) => `<circle cx="${x}" cy="${y}" r="${NODE_RADIUS}" class="node goal"/>`,
  solution: (x, y) =>
    `<rect x="${x - NODE_RADIUS}" y="${y - NODE_RADIUS * 0.8}" width="${NODE_RADIUS * 2}" ` +
    `height="${NODE_RADIUS * 1.6}" rx="4" class="node solution"/>`,
  condition: (x, y) =>
    `<polygon points="${x},${y - NODE_RADIUS} ${x + NODE_RADIUS},${y} ${x},${y + NODE_RADIUS} ` +
    `${x - NODE_RADIUS},${y}" class="node condition"/>`,
};

function relationPath(state: CanvasState, relation: RelationLine): string {
  const c = relationCurve(state.graph, relation);
  return `M ${c.p0.x} ${c.p0.y} C ${c.p1.x} ${c.p1.y}, ${c.p2.x} ${c.p2.y}, ${c.p3.x} ${c.p3.y}`;
}

/** Render the canvas contents as SVG markup (pure; no DOM access). */
export function renderSvg(state: CanvasState, width = 900, height = 540): string {
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
    `<g transform="translate(${state.viewport.offsetX} ${state.viewport.offsetY}) ` +
      `scale(${state.viewport.scale})">`,
  ];
  state.graph.relations.forEach((relation, index) => {
    const selected =
      state.selection?.kind === "relation" && state.selection.index === index;
    parts.push(
      `<path d="${relationPath(state, relation)}" class="relation${selected ? " selected" : ""}" ` +
        `data-relation="${index}" fill="none"/>`,
    );
    // midpoint support badge
    const mid = evaluate(relationCurve(state.graph, relation), 0.5);
    parts.push(
      `<text x="${mid.x}" y="${mid.y - 6}" class="support" text-anchor="middle">` +
        `${relation.support}</text>`,
    );
    if (selected && relation.curved && relation.anchors) {
      const ends = [nodePoint(state.graph, relation.from), nodePoint(state.graph, relation.to)];
      relation.anchors.forEach((anchor, which) => {
        parts.push(
          `<line x1="${ends[which].x}" y1="${ends[which].y}" x2="${anchor.x}" y2="${anchor.y}" ` +
            `class="anchor-guide"/>`,
          `<circle cx="${anchor.x}" cy="${anchor.y}" r="${ANCHOR_RADIUS}" class="anchor" ` +
            `data-relation="${index}" data-anchor="${which}"/>`,
        );
      });
    }
  });
  for (const node of state.graph.nodes) {
    const shape = NODE_SHAPES[node.kind] ?? NODE_SHAPES.goal;
    parts.push(shape(node.x, node.y));
    parts.push(
      `<text x="${node.x}" y="${node.y + NODE_RADIUS + 14}" class="label" ` +
        `text-anchor="middle">${escapeXml(node.label || node.id)}</text>`,
    );
  }
  parts.push("</g></svg>");
  return parts.join("");
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
