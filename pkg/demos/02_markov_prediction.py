#!/usr/bin/env python3
"""Discretize a continuous index into fuzzy levels and predict with a
learned Markov chain.

Pipeline: (1) map each observation onto triangular level memberships,
(2) synthesize indices into one label per year by weighted membership and
the maximum-membership rule, (3) count label transitions into a
row-stochastic matrix, (4) push the last state forward k steps.
"""
import numpy as np

from decisionlab import (
    assign_level,
    label_values,
    learn_transition_matrix,
    membership_vector,
    predict_distribution,
    synthesize,
)

# Manufacturing employed population (thousands), 2002-2008.
employment = [42.0, 37.7, 36.1, 35.3, 29.5, 24.0, 24.6]

# Level centers chosen by the analyst: low=24, mid=33, high=42.
breakpoints = (24.0, 33.0, 42.0)

print("fuzzy memberships per year (low / mid / high):")
for year, value in zip(range(2002, 2009), employment):
    mv = membership_vector(value, breakpoints)
    print(f"  {year}  {value:5.1f}  ->  {np.round(mv, 3)}")

labels = label_values(employment, breakpoints)
print("level labels:", labels)

# With several indices, weighted rows collapse to one synthesized vector.
rows = np.vstack([
    membership_vector(29.5, breakpoints),        # employment
    membership_vector(35.0, (20.0, 35.0, 50.0)), # a second index, own centers
])
combined = synthesize(rows, weights=[0.7, 0.3])
print("synthesized membership:", np.round(combined, 3), "->", assign_level(combined))

# Learn the transition matrix by counting; laplace smoothing guarantees
# every state stays reachable when history is short.
P = learn_transition_matrix(labels, n=3, laplace=True)
print("learned transition matrix (laplace on):")
print(np.round(P, 3))

# Start from the last observed label with probability one.
start = np.zeros(3)
start[labels[-1]] = 1.0
print("state distribution forward from 2008:")
for k in range(1, 6):
    dist = predict_distribution(start, P, k)
    print(f"  +{k}y  {np.round(dist, 4)}")
