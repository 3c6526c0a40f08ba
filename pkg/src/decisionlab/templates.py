"""Decision template graphs: goal/solution/condition nodes and relation lines.

A template is the visual model an analyst edits: typed nodes at canvas
positions, joined by weighted relation lines that are either straight or
cubic Bézier curves with two draggable anchors.  The text format is
line-oriented with a stable field order so templates diff cleanly under
version control.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import bezier
from .bezier import CubicBezier, Point

NODE_KINDS = ("goal", "solution", "condition")


@dataclass(frozen=True)
class TemplateNode:
    id: str
    kind: str
    position: Point
    label: str = ""

    def __post_init__(self) -> None:
        if not self.id or any(c.isspace() for c in self.id):
            raise ValueError(f"node id must be non-empty without whitespace: {self.id!r}")
        if self.kind not in NODE_KINDS:
            raise ValueError(f"node kind must be one of {NODE_KINDS}, got {self.kind!r}")
        x, y = float(self.position[0]), float(self.position[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError("node position must be finite")
        object.__setattr__(self, "position", (x, y))


@dataclass(frozen=True)
class RelationLine:
    """Weighted link between two nodes; optionally curved via two anchors.

    ``style`` is an uninterpreted rendering tag reserved for future use.
    """

    from_node: str
    to_node: str
    support: float = 1.0
    curved: bool = False
    anchors: Optional[tuple[Point, Point]] = None
    style: str = ""

    def __post_init__(self) -> None:
        if self.from_node == self.to_node:
            raise ValueError(f"relation endpoints must differ, got {self.from_node!r} twice")
        if not math.isfinite(self.support):
            raise ValueError("support must be finite")
        if self.anchors is not None:
            a1 = (float(self.anchors[0][0]), float(self.anchors[0][1]))
            a2 = (float(self.anchors[1][0]), float(self.anchors[1][1]))
            object.__setattr__(self, "anchors", (a1, a2))
        if any(c.isspace() for c in self.style):
            raise ValueError("style tag must not contain whitespace")


@dataclass(frozen=True)
class TemplateGraph:
    nodes: tuple[TemplateNode, ...]
    relations: tuple[RelationLine, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "relations", tuple(self.relations))
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate node ids: {dupes}")
        known = set(ids)
        for rel in self.relations:
            for end in (rel.from_node, rel.to_node):
                if end not in known:
                    raise ValueError(f"relation references unknown node {end!r}")

    def node(self, node_id: str) -> TemplateNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)


def relation_curve(graph: TemplateGraph, relation: RelationLine) -> CubicBezier:
    """Drawable cubic for a relation line.

    Straight lines (and curved lines that have not been given anchors yet)
    use the chord-third anchors, so they coincide with the plain segment.
    """
    start = graph.node(relation.from_node).position
    end = graph.node(relation.to_node).position
    if relation.curved and relation.anchors is not None:
        return CubicBezier(start, relation.anchors[0], relation.anchors[1], end)
    return bezier.line_as_bezier(start, end)


def hit_test_relation(
    graph: TemplateGraph,
    relation: RelationLine,
    point,
    threshold: float,
) -> bezier.HitResult:
    """Hit-test a relation line with the shared geometry contract."""
    return bezier.hit_test(relation_curve(graph, relation), point, threshold)


# --- text format --------------------------------------------------------------
#
#   template v1
#   node <id> <kind> <x> <y> <label...>
#   relation <from> <to> support=<v> curved=<0|1> [p1=<x>,<y> p2=<x>,<y>] [style=<tag>]
#
# Nodes first (in listed order), then relations; floats use shortest
# round-trip notation so a parse/serialize cycle preserves coordinates
# exactly.

_HEADER = "template v1"


def _fnum(v: float) -> str:
    return repr(float(v))


def to_text(graph: TemplateGraph) -> str:
    lines = [_HEADER]
    for n in graph.nodes:
        entry = f"node {n.id} {n.kind} {_fnum(n.position[0])} {_fnum(n.position[1])}"
        if n.label:
            entry += f" {n.label}"
        lines.append(entry)
    for r in graph.relations:
        entry = (
            f"relation {r.from_node} {r.to_node} "
            f"support={_fnum(r.support)} curved={1 if r.curved else 0}"
        )
        if r.anchors is not None:
            (x1, y1), (x2, y2) = r.anchors
            entry += f" p1={_fnum(x1)},{_fnum(y1)} p2={_fnum(x2)},{_fnum(y2)}"
        if r.style:
            entry += f" style={r.style}"
        lines.append(entry)
    return "\n".join(lines) + "\n"


def _parse_point(text: str, lineno: int) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"line {lineno}: expected x,y got {text!r}")
    return (float(parts[0]), float(parts[1]))


def from_text(text: str) -> TemplateGraph:
    lines = text.splitlines()
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    content = [(no, ln) for no, ln in stripped if ln and not ln.startswith("#")]
    if not content or content[0][1] != _HEADER:
        raise ValueError(f"template document must start with {_HEADER!r}")

    nodes: list[TemplateNode] = []
    relations: list[RelationLine] = []
    for lineno, line in content[1:]:
        fields = line.split()
        if fields[0] == "node":
            if len(fields) < 5:
                raise ValueError(f"line {lineno}: node needs id, kind, x, y")
            label = line.split(None, 5)[5] if len(fields) > 5 else ""
            nodes.append(
                TemplateNode(fields[1], fields[2], (float(fields[3]), float(fields[4])), label)
            )
        elif fields[0] == "relation":
            if len(fields) < 3:
                raise ValueError(f"line {lineno}: relation needs from and to node ids")
            support = 1.0
            curved = False
            anchors: dict[str, Point] = {}
            style = ""
            for field in fields[3:]:
                key, _, value = field.partition("=")
                if key == "support":
                    support = float(value)
                elif key == "curved":
                    curved = value == "1"
                elif key in ("p1", "p2"):
                    anchors[key] = _parse_point(value, lineno)
                elif key == "style":
                    style = value
                else:
                    raise ValueError(f"line {lineno}: unknown relation field {key!r}")
            if anchors and set(anchors) != {"p1", "p2"}:
                raise ValueError(f"line {lineno}: anchors need both p1 and p2")
            relations.append(
                RelationLine(
                    fields[1],
                    fields[2],
                    support,
                    curved,
                    (anchors["p1"], anchors["p2"]) if anchors else None,
                    style,
                )
            )
        else:
            raise ValueError(f"line {lineno}: unknown entry {fields[0]!r}")
    return TemplateGraph(tuple(nodes), tuple(relations))
