"""Transition-matrix learning and k-step distribution prediction."""
import numpy as np
import pytest

from decisionlab.errors import DimensionMismatch, LabelOutOfRange, SequenceTooShort
from decisionlab.markov import (
    learn_transition_matrix,
    matrix_from_csv,
    matrix_to_csv,
    predict_distribution,
    validate_transition_matrix,
)


def random_stochastic(rng, n):
    m = rng.uniform(0.01, 1.0, size=(n, n))
    return m / m.sum(axis=1, keepdims=True)


class TestLearn:
    def test_hand_counted_example(self):
        # transitions: A->A, A->B, B->A, A->B, B->B
        p = learn_transition_matrix([0, 0, 1, 0, 1, 1], n=2)
        assert p[0] == pytest.approx([1 / 3, 2 / 3])
        assert p[1] == pytest.approx([1 / 2, 1 / 2])

    def test_single_state(self):
        assert learn_transition_matrix([0, 0, 0], n=1).tolist() == [[1.0]]

    def test_laplace_counts(self):
        # A->B once; row A counts (0,1,0)+1 -> (1,2,1)/4
        p = learn_transition_matrix([0, 1], n=3, laplace=True)
        assert p[0] == pytest.approx([0.25, 0.5, 0.25])
        assert p[1] == pytest.approx([1 / 3, 1 / 3, 1 / 3])
        assert p[2] == pytest.approx([1 / 3, 1 / 3, 1 / 3])

    def test_laplace_makes_all_cells_positive(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(1, 6))
            labels = rng.integers(0, n, size=int(rng.integers(2, 30))).tolist()
            p = learn_transition_matrix(labels, n, laplace=True)
            assert np.all(p > 0)

    def test_unvisited_source_is_uniform(self):
        p = learn_transition_matrix([0, 1], n=3)
        assert p[1] == pytest.approx([1 / 3, 1 / 3, 1 / 3])
        assert p[2] == pytest.approx([1 / 3, 1 / 3, 1 / 3])

    def test_errors(self):
        with pytest.raises(SequenceTooShort):
            learn_transition_matrix([0], n=2)
        with pytest.raises(LabelOutOfRange):
            learn_transition_matrix([0, 5], n=2)
        with pytest.raises(ValueError):
            learn_transition_matrix([0, 0], n=0)

    def test_rows_sum_to_one_randomized(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            labels = rng.integers(0, n, size=int(rng.integers(2, 60))).tolist()
            laplace = bool(rng.integers(0, 2))
            p = learn_transition_matrix(labels, n, laplace)
            assert p.sum(axis=1) == pytest.approx(np.ones(n), abs=1e-12)
            validate_transition_matrix(p)


class TestPredict:
    def test_zero_steps_is_identity(self):
        rng = np.random.default_rng(4)
        p = random_stochastic(rng, 3)
        start = [0.2, 0.5, 0.3]
        assert predict_distribution(start, p, 0).tolist() == start

    def test_identity_matrix_fixed_point(self):
        start = [0.0, 0.0, 1.0]
        assert predict_distribution(start, np.eye(3), 7).tolist() == start

    def test_matches_stepwise_oracle(self):
        rng = np.random.default_rng(5)
        p = random_stochastic(rng, 3)
        start = np.array([0.0, 0.0, 1.0])
        expected = start.copy()
        for _ in range(3):
            expected = expected @ p
        assert predict_distribution(start, p, 3) == pytest.approx(expected, abs=1e-15)

    def test_preserves_simplex(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            n = int(rng.integers(1, 6))
            p = random_stochastic(rng, n)
            start = rng.dirichlet(np.ones(n))
            k = int(rng.integers(0, 12))
            d = predict_distribution(start, p, k)
            assert np.all(d >= -1e-15)
            assert abs(d.sum() - 1.0) <= 1e-9

    def test_chapman_kolmogorov(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            n = int(rng.integers(1, 5))
            p = random_stochastic(rng, n)
            start = rng.dirichlet(np.ones(n))
            a, b = int(rng.integers(0, 6)), int(rng.integers(0, 6))
            joint = predict_distribution(start, p, a + b)
            stepped = predict_distribution(predict_distribution(start, p, a), p, b)
            assert joint == pytest.approx(stepped, abs=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            predict_distribution([1.0, 0.0], np.eye(3), 1)
        with pytest.raises(ValueError):
            predict_distribution([1.0, 0.0], np.eye(2), -1)


class TestSerialization:
    def test_round_trip(self):
        rng = np.random.default_rng(8)
        p = random_stochastic(rng, 4)
        again = matrix_from_csv(matrix_to_csv(p))
        assert np.array_equal(again, p)

    def test_header_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            matrix_from_csv("2\n1.0,0.0\n")
