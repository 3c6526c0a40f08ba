"""Linear-Gaussian transition model for a single continuous index.

Models ``x_{t+1} = a*x_t + b + noise`` with zero-mean Gaussian noise of
standard deviation ``sigma``.  Fitting maximizes the likelihood of all
consecutive ``(x_t, x_{t+1})`` pairs, which has the closed-form solution of
ordinary least squares with the mean-squared residual as noise variance.

Belief propagation is exact: pushing a Gaussian through the linear map and
convolving with the transition noise yields another Gaussian with

    mean'     = a * mean + b
    variance' = a^2 * variance + sigma^2
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateVariance, SeriesTooShort, ZeroSigma

#: Lower clamp on the fitted noise scale so perfectly linear training data
#: still yields an evaluable (non-degenerate) transition density.
SIGMA_FLOOR = 1e-9


@dataclass(frozen=True)
class LinearGaussianModel:
    """Transition parameters: slope ``a``, intercept ``b``, noise ``sigma``."""

    a: float
    b: float
    sigma: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "sigma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.sigma < SIGMA_FLOOR:
            object.__setattr__(self, "sigma", SIGMA_FLOOR)

    def to_text(self) -> str:
        return f"{self.a!r} {self.b!r} {self.sigma!r}\n"

    @classmethod
    def from_text(cls, text: str) -> "LinearGaussianModel":
        fields = text.split()
        if len(fields) != 3:
            raise ValueError(f"expected 3 fields (a, b, sigma), got {len(fields)}")
        return cls(float(fields[0]), float(fields[1]), float(fields[2]))


@dataclass(frozen=True)
class GaussianBelief:
    """Gaussian state estimate with mean and standard deviation.

    ``std == 0`` encodes a definite (observed) value.
    """

    mean: float
    std: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and math.isfinite(self.std)):
            raise ValueError("belief parameters must be finite")
        if self.std < 0:
            raise ValueError("std must be non-negative")

    @property
    def variance(self) -> float:
        return self.std * self.std


def _values(series) -> list[float]:
    """Accept a plain value sequence or any object exposing ``.values``."""
    vals = getattr(series, "values", series)
    return [float(v) for v in vals]


def fit_mle(series: Sequence[float]) -> LinearGaussianModel:
    """Maximum-likelihood fit of (a, b, sigma) on consecutive pairs.

    With ``m`` consecutive pairs ``(x_t, x_{t+1})``:

        a     = (m*S_xy - S_x*S_y) / (m*S_xx - S_x^2)
        b     = (S_y - a*S_x) / m
        sigma = sqrt(mean squared residual)

    where ``x`` collects the predecessors and ``y`` the successors.

    Raises
    ------
    SeriesTooShort
        Fewer than 3 points (fewer than 2 pairs).
    DegenerateVariance
        All predecessor values identical, leaving the slope undefined.
    """
    vals = _values(series)
    if len(vals) < 3:
        raise SeriesTooShort(f"need at least 3 points to fit, got {len(vals)}")
    x = vals[:-1]
    y = vals[1:]
    m = len(x)
    sx = math.fsum(x)
    sy = math.fsum(y)
    sxx = math.fsum(v * v for v in x)
    sxy = math.fsum(u * v for u, v in zip(x, y))
    denom = m * sxx - sx * sx
    if denom <= 0:
        raise DegenerateVariance("all predecessor values identical; slope undefined")
    a = (m * sxy - sx * sy) / denom
    b = (sy - a * sx) / m
    sigma = math.sqrt(math.fsum((v - (a * u + b)) ** 2 for u, v in zip(x, y)) / m)
    return LinearGaussianModel(a, b, sigma)


def log_likelihood(series: Sequence[float], model: LinearGaussianModel) -> float:
    """Log-likelihood of the series' consecutive pairs under ``model``.

    Sum over pairs of ``log N(a*x_t + b, sigma^2)(x_{t+1})``, i.e.

        m * (-log sqrt(2*pi) - log sigma) - sum(residual^2) / (2*sigma^2)
    """
    if model.sigma <= 0:
        raise ZeroSigma("likelihood undefined for sigma <= 0")
    vals = _values(series)
    if len(vals) < 2:
        raise SeriesTooShort(f"need at least 2 points, got {len(vals)}")
    x = vals[:-1]
    y = vals[1:]
    m = len(x)
    ssr = math.fsum((v - (model.a * u + model.b)) ** 2 for u, v in zip(x, y))
    return m * (-math.log(math.sqrt(2.0 * math.pi)) - math.log(model.sigma)) - ssr / (
        2.0 * model.sigma**2
    )


def predict_one(belief: GaussianBelief, model: LinearGaussianModel) -> GaussianBelief:
    """Propagate a Gaussian belief one step through the transition model."""
    mean = model.a * belief.mean + model.b
    variance = model.a * model.a * belief.variance + model.sigma * model.sigma
    return GaussianBelief(mean, math.sqrt(variance))


def predict_horizon(
    last: float, model: LinearGaussianModel, k: int
) -> list[GaussianBelief]:
    """Chain ``predict_one`` for ``k`` steps starting from a definite value.

    Element ``i`` is the belief ``i + 1`` steps after the last observation.
    """
    if k < 1:
        raise ValueError(f"horizon must be >= 1, got {k}")
    beliefs = []
    belief = GaussianBelief(float(last), 0.0)
    for _ in range(k):
        belief = predict_one(belief, model)
        beliefs.append(belief)
    return beliefs
