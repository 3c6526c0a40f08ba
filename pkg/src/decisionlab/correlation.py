"""Pairwise association statistics between index series.

Covers the linear, monotone, and direction-free families:

* Pearson ``r`` (population standard deviations, expanded-sum evaluation),
* Spearman ``rho`` (Pearson on average ranks),
* Kendall ``tau`` (tau-a, tied pairs counted toward neither side),
* correlation ratio (between-group over total sum of squares),
* total correlation (entropies in bits over empirical frequencies),
* first-order partial correlation.

Pearson uses the expanded computational form
``(n*S_xy - S_x*S_y) / sqrt((n*S_xx - S_x^2) * (n*S_yy - S_y^2))`` so that
coefficient text printed at 15 significant digits is reproducible across
interfaces.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DegenerateControl,
    DimensionMismatch,
    EmptySample,
    TooFewGroups,
    ZeroVariance,
)


@dataclass(frozen=True)
class PairedSample:
    """Two equal-length finite series aligned observation by observation."""

    x: tuple[float, ...]
    y: tuple[float, ...]

    def __init__(self, x: Sequence[float], y: Sequence[float]) -> None:
        xs = tuple(float(v) for v in x)
        ys = tuple(float(v) for v in y)
        if len(xs) != len(ys):
            raise DimensionMismatch(f"margins differ in length: {len(xs)} vs {len(ys)}")
        if len(xs) < 2:
            raise EmptySample(f"need at least 2 paired observations, got {len(xs)}")
        if not all(math.isfinite(v) for v in xs + ys):
            raise ValueError("sample values must be finite")
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "y", ys)

    def __len__(self) -> int:
        return len(self.x)


def _pearson_xy(x: Sequence[float], y: Sequence[float]) -> float:
    # Plain sequential sums, not compensated: the expanded form's printed
    # 15-digit output is part of the regression contract.
    n = len(x)
    sx = sum(x)
    sy = sum(y)
    sxx = sum(v * v for v in x)
    syy = sum(v * v for v in y)
    sxy = sum(u * v for u, v in zip(x, y))
    dx = n * sxx - sx * sx
    dy = n * syy - sy * sy
    if dx <= 0 or dy <= 0:
        raise ZeroVariance("a margin is constant; coefficient undefined")
    r = (n * sxy - sx * sy) / math.sqrt(dx * dy)
    return min(1.0, max(-1.0, r))


def pearson(sample: PairedSample) -> float:
    """Linear correlation coefficient in [-1, 1] (population deviations)."""
    return _pearson_xy(sample.x, sample.y)


def _ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks ascending; tied values share their average rank."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman(sample: PairedSample) -> float:
    """Rank correlation: Pearson of the two margins' rank vectors.

    Ties receive average ranks.  On tie-free data this equals the textbook
    shortcut ``1 - 6*sum(d_i^2) / (n*(n^2-1))`` with ``d_i`` the per-pair
    rank difference.
    """
    return _pearson_xy(_ranks(sample.x), _ranks(sample.y))


def kendall_tau(sample: PairedSample) -> float:
    """Kendall's tau: concordant minus discordant pairs over all pairs.

    Pairs tied in either margin count toward neither side while the
    denominator stays ``n*(n-1)/2``.
    """
    x, y = sample.x, sample.y
    n = len(x)
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = (x[i] - x[j]) * (y[i] - y[j])
            if s > 0:
                concordant += 1
            elif s < 0:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2.0)


def correlation_ratio(groups: Sequence[Sequence[float]]) -> float:
    """Between-group sum of squares over total sum of squares, in [0, 1].

    ``groups`` holds the dependent values grouped by the explanatory
    variable.  Empty groups are ignored; at least two non-empty groups and
    a non-constant pooled sample are required.
    """
    filled = [[float(v) for v in g] for g in groups if len(g) > 0]
    if len(filled) < 2:
        raise TooFewGroups(f"need at least 2 non-empty groups, got {len(filled)}")
    pooled = [v for g in filled for v in g]
    grand = math.fsum(pooled) / len(pooled)
    total = math.fsum((v - grand) ** 2 for v in pooled)
    if total <= 0:
        raise ZeroVariance("pooled sample is constant; ratio undefined")
    between = math.fsum(len(g) * (math.fsum(g) / len(g) - grand) ** 2 for g in filled)
    return min(1.0, max(0.0, between / total))


def _entropy_bits(counts: Counter, n: int) -> float:
    return -math.fsum((c / n) * math.log2(c / n) for c in counts.values())


def total_correlation(samples: Sequence[Sequence]) -> float:
    """Sum of marginal entropies minus joint entropy, in bits.

    Series must be discrete-valued and aligned; continuous data should be
    discretized (see :mod:`decisionlab.leveling`) before calling this.
    """
    if len(samples) == 0:
        raise EmptySample("no series supplied")
    lengths = {len(s) for s in samples}
    if len(lengths) != 1:
        raise DimensionMismatch(f"series lengths differ: {sorted(lengths)}")
    (n,) = lengths
    if n == 0:
        raise EmptySample("series are empty")
    marginal = math.fsum(_entropy_bits(Counter(s), n) for s in samples)
    joint = _entropy_bits(Counter(zip(*samples)), n)
    return max(0.0, marginal - joint)


def partial_correlation(
    sample_xy: PairedSample, sample_xz: PairedSample, sample_yz: PairedSample
) -> float:
    """First-order partial correlation of x and y controlling for z.

    ``(r_xy - r_xz*r_yz) / sqrt((1 - r_xz^2) * (1 - r_yz^2))`` from the
    three pairwise Pearson coefficients.
    """
    r_xy = pearson(sample_xy)
    r_xz = pearson(sample_xz)
    r_yz = pearson(sample_yz)
    if abs(r_xz) >= 1.0 - 1e-12 or abs(r_yz) >= 1.0 - 1e-12:
        raise DegenerateControl("control variable perfectly correlated with a margin")
    value = (r_xy - r_xz * r_yz) / math.sqrt((1 - r_xz**2) * (1 - r_yz**2))
    return min(1.0, max(-1.0, value))


@dataclass(frozen=True)
class CorrelationReport:
    """Computed coefficients for one pair; ``None`` marks undefined entries."""

    pearson: Optional[float]
    kendall_tau: Optional[float]
    spearman: Optional[float]
    ratio: Optional[float] = None
    total: Optional[float] = None
    partial: Optional[float] = None


def compute_report(
    sample: PairedSample,
    *,
    ratio_bins: Optional[int] = None,
    total_levels: Optional[int] = None,
    control: Optional[Sequence[float]] = None,
) -> CorrelationReport:
    """Assemble the full report for a pair, tolerating undefined entries.

    Parameters
    ----------
    sample : PairedSample
        The aligned pair under analysis.
    ratio_bins : int, optional
        Group y by x into this many equal-width x-bins and add the
        correlation ratio of y to x.
    total_levels : int, optional
        Discretize both margins onto this many equal-width level centers
        and add the total correlation.
    control : sequence of float, optional
        Control series aligned with the sample; adds the first-order
        partial correlation.
    """
    def guarded(fn, *args):
        try:
            return fn(*args)
        except (ZeroVariance, TooFewGroups, DegenerateControl):
            return None

    report = {
        "pearson": guarded(pearson, sample),
        "kendall_tau": kendall_tau(sample),
        "spearman": guarded(spearman, sample),
    }
    if ratio_bins is not None:
        report["ratio"] = guarded(correlation_ratio, group_by_bins(sample, ratio_bins))
    if total_levels is not None:
        xl = _equal_width_labels(sample.x, total_levels)
        yl = _equal_width_labels(sample.y, total_levels)
        report["total"] = total_correlation([xl, yl])
    if control is not None:
        z = tuple(float(v) for v in control)
        report["partial"] = guarded(
            partial_correlation,
            sample,
            PairedSample(sample.x, z),
            PairedSample(sample.y, z),
        )
    return CorrelationReport(**report)


def group_by_bins(sample: PairedSample, bins: int) -> list[list[float]]:
    """Split y values into ``bins`` equal-width groups over the x range."""
    if bins < 2:
        raise TooFewGroups(f"need at least 2 bins, got {bins}")
    lo, hi = min(sample.x), max(sample.x)
    if hi <= lo:
        raise ZeroVariance("x margin is constant; cannot bin")
    width = (hi - lo) / bins
    groups: list[list[float]] = [[] for _ in range(bins)]
    for xv, yv in zip(sample.x, sample.y):
        idx = min(int((xv - lo) / width), bins - 1)
        groups[idx].append(yv)
    return groups


def _equal_width_labels(values: Sequence[float], levels: int) -> list[int]:
    # Local import: leveling also stands alone; only report assembly links them.
    from .leveling import label_values

    lo, hi = min(values), max(values)
    if hi <= lo:
        return [0] * len(values)
    step = (hi - lo) / (levels - 1)
    centers = [lo + i * step for i in range(levels)]
    return label_values(values, centers)


def _fmt(value: float) -> str:
    return "%.15g" % value


def format_report(sample: PairedSample, report: CorrelationReport) -> str:
    """Render the analysis in the workbench's textual layout.

    Values line for each margin, then one labeled line per coefficient,
    all numbers at 15 significant digits.
    """
    lines = [
        "X Values:",
        " ".join(_fmt(v) for v in sample.x),
        "",
        "Y Values:",
        " ".join(_fmt(v) for v in sample.y),
        "",
        f"Pearson Correlation Coefficient: {_coef(report.pearson)}",
        f"Kendall's Tau Correlation Coefficient: {_coef(report.kendall_tau)}",
        f"Spearman Rank Correlation: {_coef(report.spearman)}",
    ]
    if report.ratio is not None:
        lines.append(f"Correlation Ratio: {_fmt(report.ratio)}")
    if report.total is not None:
        lines.append(f"Total Correlation: {_fmt(report.total)}")
    if report.partial is not None:
        lines.append(f"Partial Correlation: {_fmt(report.partial)}")
    return "\n".join(lines) + "\n"


def _coef(value: Optional[float]) -> str:
    return "undefined" if value is None else _fmt(value)
