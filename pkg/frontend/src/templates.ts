/**
 * Template graph model and its line-oriented document format.
 *
 * The format matches what the service validates and stores:
 *
 *   template v1
 *   node <id> <kind> <x> <y> <label...>
 *   relation <from> <to> support=<v> curved=<0|1> [p1=<x>,<y> p2=<x>,<y>] [style=<tag>]
 *
 * Numbers serialize with shortest round-trip notation, so a parse of a
 * serialize reproduces every coordinate exactly.
 */
import { Cubic, Point, lineAsCubic } from "./bezier.js";

export type NodeKind = "goal" | "solution" | "condition";

export interface TemplateNode {
  id: string;
  kind: NodeKind;
  x: number;
  y: number;
  label: string;
}

export interface RelationLine {
  from: string;
  to: string;
  support: number;
  curved: boolean;
  anchors: [Point, Point] | null;
  style: string;
}

export interface TemplateGraph {
  nodes: TemplateNode[];
  relations: RelationLine[];
}

const HEADER = "template v1";
const KINDS: readonly NodeKind[] = ["goal", "solution", "condition"];

export function nodeById(graph: TemplateGraph, id: string): TemplateNode {
  const node = graph.nodes.find((n) => n.id === id);
  if (!node) throw new Error(`unknown node ${id}`);
  return node;
}

/** Drawable cubic for a relation; straight lines use chord-third anchors. */
export function relationCurve(graph: TemplateGraph, relation: RelationLine): Cubic {
  const start = nodeById(graph, relation.from);
  const end = nodeById(graph, relation.to);
  const p0 = { x: start.x, y: start.y };
  const p3 = { x: end.x, y: end.y };
  if (relation.curved && relation.anchors) {
    return { p0, p1: { ...relation.anchors[0] }, p2: { ...relation.anchors[1] }, p3 };
  }
  return lineAsCubic(p0, p3);
}

function fnum(v: number): string {
  return Number.isInteger(v) ? `${v}.0` : String(v);
}

export function serialize(graph: TemplateGraph): string {
  const lines = [HEADER];
  for (const n of graph.nodes) {
    let entry = `node ${n.id} ${n.kind} ${fnum(n.x)} ${fnum(n.y)}`;
    if (n.label) entry += ` ${n.label}`;
    lines.push(entry);
  }
  for (const r of graph.relations) {
    let entry = `relation ${r.from} ${r.to} support=${fnum(r.support)} curved=${r.curved ? 1 : 0}`;
    if (r.anchors) {
      entry += ` p1=${fnum(r.anchors[0].x)},${fnum(r.anchors[0].y)}`;
      entry += ` p2=${fnum(r.anchors[1].x)},${fnum(r.anchors[1].y)}`;
    }
    if (r.style) entry += ` style=${r.style}`;
    lines.push(entry);
  }
  return lines.join("\n") + "\n";
}

function parsePoint(text: string, lineno: number): Point {
  const parts = text.split(",");
  if (parts.length !== 2) throw new Error(`line ${lineno}: expected x,y got ${text}`);
  const x = Number(parts[0]);
  const y = Number(parts[1]);
  if (!Number.isFinite(x) || !Number.isFinite(y)) {
    throw new Error(`line ${lineno}: non-numeric point ${text}`);
  }
  return { x, y };
}

export function parse(text: string): TemplateGraph {
  const rows = text
    .split("\n")
    .map((line, i) => ({ lineno: i + 1, line: line.trim() }))
    .filter(({ line }) => line.length > 0 && !line.startsWith("#"));
  if (rows.length === 0 || rows[0].line !== HEADER) {
    throw new Error(`template document must start with "${HEADER}"`);
  }

  const nodes: TemplateNode[] = [];
  const relations: RelationLine[] = [];
  for (const { lineno, line } of rows.slice(1)) {
    const fields = line.split(/\s+/);
    if (fields[0] === "node") {
      if (fields.length < 5) throw new Error(`line ${lineno}: node needs id, kind, x, y`);
      const kind = fields[2] as NodeKind;
      if (!KINDS.includes(kind)) throw new Error(`line ${lineno}: bad node kind ${fields[2]}`);
      nodes.push({
        id: fields[1],
        kind,
        x: Number(fields[3]),
        y: Number(fields[4]),
        label: fields.slice(5).join(" "),
      });
    } else if (fields[0] === "relation") {
      if (fields.length < 3) throw new Error(`line ${lineno}: relation needs endpoints`);
      const rel: RelationLine = {
        from: fields[1],
        to: fields[2],
        support: 1,
        curved: false,
        anchors: null,
        style: "",
      };
      let p1: Point | null = null;
      let p2: Point | null = null;
      for (const field of fields.slice(3)) {
        const eq = field.indexOf("=");
        const key = eq < 0 ? field : field.slice(0, eq);
        const value = eq < 0 ? "" : field.slice(eq + 1);
        if (key === "support") rel.support = Number(value);
        else if (key === "curved") rel.curved = value === "1";
        else if (key === "p1") p1 = parsePoint(value, lineno);
        else if (key === "p2") p2 = parsePoint(value, lineno);
        else if (key === "style") rel.style = value;
        else throw new Error(`line ${lineno}: unknown relation field ${key}`);
      }
      if ((p1 === null) !== (p2 === null)) {
        throw new Error(`line ${lineno}: anchors need both p1 and p2`);
      }
      if (p1 && p2) rel.anchors = [p1, p2];
      relations.push(rel);
    } else {
      throw new Error(`line ${lineno}: unknown entry ${fields[0]}`);
    }
  }

  const ids = new Set<string>();
  for (const n of nodes) {
    if (ids.has(n.id)) throw new Error(`duplicate node id ${n.id}`);
    ids.add(n.id);
  }
  for (const r of relations) {
    if (!ids.has(r.from) || !ids.has(r.to)) {
      throw new Error(`relation references unknown node ${r.from} -> ${r.to}`);
    }
    if (r.from === r.to) throw new Error(`self-loop on ${r.from}`);
  }
  return { nodes, relations };
}
