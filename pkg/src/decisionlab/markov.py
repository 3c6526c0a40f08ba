"""Discrete Markov chain learning and k-step prediction.

The transition matrix is learned from a label sequence by counting:
``p_ij`` is the number of observed ``i -> j`` steps over the number of
times ``i`` was left.  Prediction propagates a state distribution through
repeated vector-matrix products, which keeps every intermediate on the
probability simplex.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, LabelOutOfRange, SequenceTooShort

ROW_SUM_TOL = 1e-9


def learn_transition_matrix(
    labels: Sequence[int], n: int, laplace: bool = False
) -> np.ndarray:
    """Estimate the row-stochastic transition matrix of a label sequence.

    Parameters
    ----------
    labels : sequence of int
        State labels in [0, n), at least two of them.
    n : int
        Number of states (matrix dimension), at least 1.
    laplace : bool
        When true, add one to every transition count before normalizing so
        no cell is exactly zero.  When false, a state that never occurs as
        a source gets a uniform row (there is nothing to normalize).

    Returns
    -------
    numpy.ndarray
        ``(n, n)`` matrix whose rows each sum to 1.
    """
    if n < 1:
        raise ValueError(f"state count must be >= 1, got {n}")
    seq = [int(s) for s in labels]
    if len(seq) < 2:
        raise SequenceTooShort(f"need at least 2 labels, got {len(seq)}")
    for s in seq:
        if not 0 <= s < n:
            raise LabelOutOfRange(f"label {s} outside [0, {n})")

    counts = np.zeros((n, n))
    for i, j in zip(seq, seq[1:]):
        counts[i, j] += 1.0
    if laplace:
        counts += 1.0

    matrix = np.empty((n, n))
    for i in range(n):
        total = counts[i].sum()
        matrix[i] = counts[i] / total if total > 0 else np.full(n, 1.0 / n)
    return matrix


def predict_distribution(
    start: Sequence[float], matrix: np.ndarray, k: int
) -> np.ndarray:
    """Distribution after ``k`` steps: ``start`` times the k-th matrix power.

    Computed as ``k`` successive vector-matrix products rather than an
    explicit matrix power; at desk scale this favors accuracy and keeps
    ``k = 0`` trivially the identity.
    """
    d = np.asarray(start, dtype=float).copy()
    p = np.asarray(matrix, dtype=float)
    if k < 0:
        raise ValueError(f"step count must be >= 0, got {k}")
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DimensionMismatch(f"transition matrix must be square, got {p.shape}")
    if d.shape != (p.shape[0],):
        raise DimensionMismatch(
            f"distribution length {d.shape} does not match matrix size {p.shape[0]}"
        )
    for _ in range(k):
        d = d @ p
    return d


def validate_transition_matrix(matrix: np.ndarray) -> None:
    """Raise if ``matrix`` is not row-stochastic within tolerance."""
    p = np.asarray(matrix, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {p.shape}")
    if np.any(p < 0):
        raise ValueError("transition probabilities must be non-negative")
    bad = np.abs(p.sum(axis=1) - 1.0) > ROW_SUM_TOL
    if np.any(bad):
        rows = np.flatnonzero(bad).tolist()
        raise ValueError(f"rows {rows} do not sum to 1")


def matrix_to_csv(matrix: np.ndarray) -> str:
    """Serialize a transition matrix: first line the size, then one row per line."""
    p = np.asarray(matrix, dtype=float)
    lines = [str(p.shape[0])]
    for row in p:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def matrix_from_csv(text: str) -> np.ndarray:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty matrix document")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise DimensionMismatch(f"expected {n} rows after header, got {len(lines) - 1}")
    rows = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    p = np.array(rows)
    if p.shape != (n, n):
        raise DimensionMismatch(f"expected {n}x{n} cells, got {p.shape}")
    return p
