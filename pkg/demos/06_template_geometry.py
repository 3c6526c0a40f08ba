#!/usr/bin/env python3
"""Model a decision template and work with its curved relation lines.

A template is goals, solutions, and conditions at canvas positions, joined
by weighted relation lines. Straight lines become cubic curves whose two
anchors a user drags; geometry here covers evaluation, adaptive
flattening, and hit-testing for selection.
"""
from decisionlab import (
    CubicBezier,
    RelationLine,
    TemplateGraph,
    TemplateNode,
    evaluate,
    flatten,
    hit_test,
    line_as_bezier,
    split,
)
from decisionlab.templates import from_text, relation_curve, to_text

graph = TemplateGraph(
    nodes=(
        TemplateNode("g1", "goal", (260.0, 40.0), "sustainable economy"),
        TemplateNode("s1", "solution", (80.0, 200.0), "diversify industries"),
        TemplateNode("c1", "condition", (420.0, 210.0), "labor supply"),
    ),
    relations=(
        RelationLine("s1", "g1", support=0.9),
        RelationLine("c1", "g1", support=0.4, curved=True,
                     anchors=((400.0, 120.0), (330.0, 60.0))),
    ),
)

# Toggling straight -> curved starts from anchors on the chord, so the
# rendered curve initially coincides with the old line.
straight = relation_curve(graph, graph.relations[0])
print("default anchors:", straight.p1, straight.p2)

curved = relation_curve(graph, graph.relations[1])
print("curve endpoints:", curved.p0, curved.p3)
print("midpoint:", evaluate(curved, 0.5))

# De Casteljau split: both halves are themselves cubics on the same path.
left, right = split(curved, 0.5)
assert left.p3 == right.p0 == evaluate(curved, 0.5)

# Adaptive flattening spends vertices where curvature needs them.
for tolerance in (2.0, 0.5, 0.1):
    print(f"flatten tolerance {tolerance:>4}: {len(flatten(curved, tolerance))} vertices")

# Hit-testing drives selection: a click near the curve selects the line.
on_curve = evaluate(curved, 0.37)
near = (on_curve[0] + 1.5, on_curve[1] - 1.0)
far = (0.0, 400.0)
print("click on curve:", hit_test(curved, on_curve, threshold=4.0))
print("click nearby:  ", hit_test(curved, near, threshold=4.0))
print("click far away:", hit_test(curved, far, threshold=4.0))

# A straight segment as a cubic hits exactly like the segment itself.
segment = line_as_bezier((0.0, 0.0), (100.0, 0.0))
print("segment distance:", hit_test(segment, (50.0, 3.0), threshold=5.0).distance)

# Templates serialize to a diff-friendly line format and parse back exactly.
text = to_text(graph)
assert from_text(text) == graph
print("--- template document ---")
print(text)
