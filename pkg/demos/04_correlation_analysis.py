#!/usr/bin/env python3
"""Compare correlation measures on real index pairs and a nonlinear trap.

Pearson sees linear association, Spearman and Kendall see monotone
association, and the correlation ratio / total correlation stay sensitive
even when the relationship has no consistent direction.
"""
from decisionlab import (
    PairedSample,
    compute_report,
    correlation_ratio,
    format_report,
    kendall_tau,
    pearson,
    spearman,
    total_correlation,
)
from decisionlab.leveling import label_values

# Seasonal 2004-2005: employed population vs gambling tax revenue.
employment = [20.1, 22.0, 23.0, 26.7, 27.5, 28.7, 33.3, 33.7]
tax = [3202.0, 3578.4, 4232.7, 4223.5, 3993.3, 4524.9, 4553.4, 4246.9]
seasonal = PairedSample(employment, tax)

print("== employed population vs gambling tax revenue ==")
print(format_report(seasonal, compute_report(seasonal)))

# Annual 2000-2008: gambling GDP vs mining GDP — all three coefficients
# come out near zero, the pair is weakly related.
gambling = [19225.4, 20368.6, 22771.7, 27340.3, 34093.3, 36224.2, 41427.1, 54552.3, 63965.5]
mining = [2.6, 5.9, 6.1, 9.4, 12.4, 9.9, 8.8, 9.0, 2.5]
gdp = PairedSample(gambling, mining)

print("== gambling GDP vs mining GDP ==")
print(format_report(gdp, compute_report(gdp)))

# The quadratic trap: y depends on x completely, yet every directional
# coefficient is blind to it because the direction flips at zero.
xs = [-4.0, -3.0, -2.0, -1.0, 1.0, 2.0, 3.0, 4.0]
ys = [x * x for x in xs]
trap = PairedSample(xs, ys)
print("== y = x^2 on symmetric x ==")
print(f"pearson  {pearson(trap):+.6f}")
print(f"kendall  {kendall_tau(trap):+.6f}")
print(f"spearman {spearman(trap):+.6f}")

groups = [[y for x, y in zip(xs, ys) if abs(x) == k] for k in (1.0, 2.0, 3.0, 4.0)]
print(f"correlation ratio grouped by |x|: {correlation_ratio(groups):.6f}")

# Total correlation works on discrete labels; level the margins first.
x_labels = label_values(xs, (-4.0, 0.0, 4.0))
y_labels = label_values(ys, (1.0, 8.0, 16.0))
print(f"total correlation of leveled margins: {total_correlation([x_labels, y_labels]):.6f} bits")
