#!/usr/bin/env python3
"""Fit a linear-Gaussian transition model and chain predictions forward.

The model is x' = a*x + b + Gaussian noise. The maximum-likelihood fit is
closed-form over consecutive pairs; prediction propagates a Gaussian
belief exactly (mean' = a*mean + b, var' = a^2*var + sigma^2), so
uncertainty widens over the horizon. Writes SVG figures for the predicted
density and the history-plus-prediction trend.
"""
from pathlib import Path

from decisionlab import GaussianBelief, TimeSeries, fit_mle, log_likelihood, predict_horizon
from decisionlab.svgplot import emit_distribution_svg, emit_trend_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# Gambling gross revenue (million MOP), 2002-2009.
revenue = [23496.0, 30315.1, 43510.9, 47133.7, 57521.3, 83846.8, 109826.3, 120383.0]
years = list(range(2002, 2010))

model = fit_mle(revenue)
print(f"fitted model: a={model.a:.6f}  b={model.b:.1f}  sigma={model.sigma:.1f}")
print(f"log-likelihood at the fit: {log_likelihood(revenue, model):.4f}")

beliefs = predict_horizon(revenue[-1], model, k=5)
print("five-year horizon:")
for offset, belief in enumerate(beliefs, start=1):
    print(f"  {years[-1] + offset}  mean={belief.mean:>10.1f}  std={belief.std:>9.1f}")

# Density of the first predicted year.
density_svg = emit_distribution_svg(
    beliefs[0],
    x_label=f"gross revenue in {years[-1] + 1} (million MOP)",
)
(OUT / "predicted_density.svg").write_text(density_svg, encoding="utf-8")

# Trend: history as a line, predictions as gradient bars over mean +/- 3 std.
history = TimeSeries(1, 4, tuple(zip(map(float, years), revenue)))
trend_svg = emit_trend_svg(
    history,
    beliefs,
    x_label="year",
    y_label="gross revenue (million MOP)",
)
(OUT / "revenue_trend.svg").write_text(trend_svg, encoding="utf-8")
print(f"wrote {OUT / 'predicted_density.svg'} and {OUT / 'revenue_trend.svg'}")

# A definite observation is a zero-width belief; one step of propagation
# reduces to the transition density itself (std equals the model noise).
definite = GaussianBelief(mean=revenue[-1], std=0.0)
first = predict_horizon(revenue[-1], model, 1)[0]
assert first.std == model.sigma
print(f"one step from a definite value: mean={first.mean:.1f} std={first.std:.1f}")
