"""Fuzzy discretization of continuous indices into level labels.

A continuous observation is mapped onto ``L`` ordered levels through a
triangular partition-of-unity membership function anchored at user-chosen
level centers (breakpoints).  Several indices are then synthesized into a
single discrete state by weighting each index's membership row and taking
the level of maximum synthesized membership.

Breakpoints are always authored by the user; this module never learns them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyVector, NonFiniteValue

WEIGHT_TOL = 1e-12


def membership_vector(value: float, breakpoints: Sequence[float]) -> np.ndarray:
    """Fuzzy memberships of ``value`` across the levels of ``breakpoints``.

    Triangular partition of unity over the level centers: a value sitting
    exactly on breakpoint ``i`` belongs fully to level ``i``; between two
    adjacent breakpoints membership is split by linear interpolation;
    outside the covered range the nearest extreme level gets everything.

    Parameters
    ----------
    value : float
        Observation to discretize.  Must be finite.
    breakpoints : sequence of float
        Strictly increasing level centers, one per level.

    Returns
    -------
    numpy.ndarray
        Vector of length ``len(breakpoints)`` with entries in [0, 1]
        summing to 1.
    """
    if not math.isfinite(value):
        raise NonFiniteValue(f"cannot discretize non-finite value {value!r}")
    bp = [float(b) for b in breakpoints]
    if not bp:
        raise EmptyVector("breakpoints must be non-empty")
    if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
        raise ValueError("breakpoints must be strictly increasing")

    out = np.zeros(len(bp))
    if value <= bp[0]:
        out[0] = 1.0
        return out
    if value >= bp[-1]:
        out[-1] = 1.0
        return out
    for i in range(len(bp) - 1):
        if bp[i] <= value <= bp[i + 1]:
            t = (value - bp[i]) / (bp[i + 1] - bp[i])
            out[i] = 1.0 - t
            out[i + 1] = t
            return out
    raise AssertionError("unreachable: value inside range but no bracket found")


def synthesize(memberships: np.ndarray, weights: Sequence[float]) -> np.ndarray:
    """Collapse a per-index membership matrix into one level vector.

    Rows are indices, columns are levels.  The result is the weighted sum
    of rows; with weights on the simplex the output again sums to 1.
    """
    m = np.asarray(memberships, dtype=float)
    w = np.asarray(weights, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatch(f"membership matrix must be 2-D, got shape {m.shape}")
    if w.shape != (m.shape[0],):
        raise DimensionMismatch(
            f"weight vector length {w.shape} does not match {m.shape[0]} rows"
        )
    return w @ m


def assign_level(synth: Sequence[float]) -> int:
    """Level of maximum membership; ties resolve to the lowest level."""
    v = np.asarray(synth, dtype=float)
    if v.size == 0:
        raise EmptyVector("cannot assign a level from an empty vector")
    if np.any(v < 0):
        raise ValueError("membership vector must be non-negative")
    return int(np.argmax(v))  # argmax returns the first maximum


@dataclass(frozen=True)
class LevelingScheme:
    """Per-index breakpoints and weights for state synthesis.

    ``entries`` maps an index id to its (breakpoints, weight) pair.  All
    indices must use the same level count and the weights must sum to 1.
    """

    entries: Mapping[int, tuple[tuple[float, ...], float]]

    def __post_init__(self) -> None:
        if not self.entries:
            raise EmptyVector("leveling scheme has no indices")
        counts = set()
        for index_id, (bp, weight) in self.entries.items():
            if len(bp) < 2:
                raise ValueError(f"index {index_id}: need at least 2 breakpoints")
            if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
                raise ValueError(f"index {index_id}: breakpoints not strictly increasing")
            if weight < 0:
                raise ValueError(f"index {index_id}: negative weight")
            counts.add(len(bp))
        if len(counts) != 1:
            raise DimensionMismatch("all indices must share one level count")
        total = math.fsum(w for _, w in self.entries.values())
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {total!r}, expected 1")

    @property
    def level_count(self) -> int:
        bp, _ = next(iter(self.entries.values()))
        return len(bp)

    @property
    def index_ids(self) -> tuple[int, ...]:
        return tuple(self.entries)


def parse_scheme(text: str) -> LevelingScheme:
    """Parse a leveling scheme from config text.

    One line per index: ``index_id weight bp1 bp2 [bp3 ...]``.
    Blank lines and ``#`` comments are ignored.
    """
    entries: dict[int, tuple[tuple[float, ...], float]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) < 4:
            raise ValueError(f"line {lineno}: expected 'index weight bp1 bp2 ...'")
        index_id = int(fields[0])
        weight = float(fields[1])
        breakpoints = tuple(float(f) for f in fields[2:])
        entries[index_id] = (breakpoints, weight)
    return LevelingScheme(entries)


def load_scheme(path) -> LevelingScheme:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scheme(fh.read())


def label_values(values: Iterable[float], breakpoints: Sequence[float]) -> list[int]:
    """Discretize a single-index value sequence to level labels."""
    return [assign_level(membership_vector(v, breakpoints)) for v in values]


def label_history(
    values_by_index: Mapping[int, Sequence[float]], scheme: LevelingScheme
) -> list[int]:
    """Synthesize aligned multi-index history into one label per time step.

    For each time step: build the membership matrix (one row per index in
    scheme order), weight the rows, and take the level of maximum
    synthesized membership.
    """
    ids = scheme.index_ids
    missing = [i for i in ids if i not in values_by_index]
    if missing:
        raise DimensionMismatch(f"missing value series for indices {missing}")
    lengths = {len(values_by_index[i]) for i in ids}
    if len(lengths) != 1:
        raise DimensionMismatch("index series must be aligned to equal length")
    (n,) = lengths
    weights = [scheme.entries[i][1] for i in ids]
    labels = []
    for t in range(n):
        rows = np.vstack(
            [membership_vector(values_by_index[i][t], scheme.entries[i][0]) for i in ids]
        )
        labels.append(assign_level(synthesize(rows, weights)))
    return labels
