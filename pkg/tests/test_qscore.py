import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from oracles import coranking_oracle, qscores_oracle, rank_oracle

from automanifold._validation import pairwise_euclidean
from automanifold.embed import Embedding
from automanifold.errors import DomainError
from automanifold.qscore import (CoRankingMatrix, coranking, q_curve, q_scores, rank_matrix,
                                 score_embedding)


def rotation(rng, d):
    Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    return Q


def test_rank_line():
    D = pairwise_euclidean(np.array([[0.0], [1.0], [3.0]]))
    R = rank_matrix(D)
    assert R[0, 1:].tolist() == [1, 2]
    assert R[2, :2].tolist() == [2, 1]


def test_rank_ties_by_index():
    D = np.ones((5, 5)) - np.eye(5)
    R = rank_matrix(D)
    for i in range(5):
        others = [j for j in range(5) if j != i]
        assert [R[i, j] for j in others] == [1, 2, 3, 4]


def test_rank_counting_oracle(rng):
    X = np.round(rng.normal(size=(15, 2)), 1)  # rounding creates ties
    D = pairwise_euclidean(X)
    assert np.array_equal(rank_matrix(D), rank_oracle(D))


def test_coranking_identity_and_scaling(rng):
    D = pairwise_euclidean(rng.normal(size=(10, 3)))
    for Dl in (D, 3.7 * D):
        q = coranking(D, Dl).q
        assert np.array_equal(q, 10 * np.eye(9, dtype=int))


def test_coranking_n4_enumeration(rng):
    Dh = pairwise_euclidean(rng.normal(size=(4, 3)))
    Dl = pairwise_euclidean(rng.normal(size=(4, 1)))
    assert np.array_equal(coranking(Dh, Dl).q, coranking_oracle(Dh, Dl))


def test_coranking_size_mismatch():
    with pytest.raises(DomainError):
        coranking(np.zeros((3, 3)), np.zeros((4, 4)))


def test_curve_diagonal():
    assert np.allclose(q_curve(CoRankingMatrix(5 * np.eye(4, dtype=int), 5)), 1.0)


def test_curve_antidiagonal_block_sums():
    q = np.fliplr(4 * np.eye(3, dtype=int))
    curve = q_curve(CoRankingMatrix(q, 4))
    direct = [q[:K, :K].sum() / (K * 4) for K in (1, 2, 3)]
    assert np.allclose(curve, direct)
    assert np.allclose(curve, [0.0, 0.5, 1.0])


def test_scores_constant_curve():
    s = q_scores(np.ones(7))
    assert (s.k_max, s.q_local, s.q_global) == (1, 1.0, 1.0)


def test_scores_hand_example():
    s = q_scores([0.5, 1.0, 1.0])
    assert s.k_max == 2 and s.q_local == 0.75 and s.q_global == 1.0


def test_scores_tie_smallest_argmax():
    # curve - K/3 = (0, 0, 0)
    s = q_scores([1 / 3, 2 / 3, 1.0])
    assert s.k_max == 1


def test_score_identity_and_isometry(rng):
    X = rng.normal(size=(40, 3))
    s = score_embedding(X, Embedding(X, "id"))
    assert (s.q_local, s.q_global) == (1.0, 1.0)
    Y = X @ rotation(rng, 3) + [5.0, -2.0, 1.0]
    t = score_embedding(X, Embedding(Y, "rot"))
    assert np.array_equal(t.curve, s.curve)


def test_score_random_baseline():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(200, 10))
    s = score_embedding(X, Embedding(rng.normal(size=(200, 2)), "rand"))
    assert s.q_local < 0.3


def test_score_row_mismatch():
    with pytest.raises(DomainError):
        score_embedding(np.zeros((4, 2)), Embedding(np.zeros((3, 1)), "x"))


def test_score_uses_index(rng):
    X = rng.normal(size=(10, 2))
    e = Embedding(X[[1, 4, 7, 8]], "sub", index=[1, 4, 7, 8])
    assert score_embedding(X, e).q_local == 1.0


def test_degenerate_rows_warn():
    X = np.zeros((3, 2))
    with pytest.warns(RuntimeWarning, match="coincident"):
        s = score_embedding(X, Embedding(X, "x"))
    assert s.q_local == 1.0


def test_json():
    s = q_scores([0.5, 1.0, 1.0])
    d = json.loads(s.to_json())
    assert d == {"k_max": 2, "q_local": 0.75, "q_global": 1.0}
    assert json.loads(s.to_json(include_curve=True))["curve"] == [0.5, 1.0, 1.0]


clouds = st.integers(3, 14).flatmap(lambda n: st.tuples(
    arrays(np.float64, (n, 3), elements=st.floats(-5, 5, allow_nan=False)),
    arrays(np.float64, (n, 2), elements=st.floats(-5, 5, allow_nan=False))))


@settings(max_examples=80, deadline=None)
@given(clouds)
def test_coranking_invariants(pair):
    X, Y = pair
    n = X.shape[0]
    cm = coranking(pairwise_euclidean(X), pairwise_euclidean(Y))
    assert np.all(cm.q.sum(axis=0) == n) and np.all(cm.q.sum(axis=1) == n)
    assert cm.q.sum() == n * (n - 1)
    curve = q_curve(cm)
    assert np.all((curve >= 0) & (curve <= 1 + 1e-15)) and curve[-1] == 1.0
    s = q_scores(curve)
    assert 1 <= s.k_max <= n - 1
    assert 0 <= s.q_local <= 1 and 0 <= s.q_global <= 1


@settings(max_examples=40, deadline=None)
@given(clouds)
def test_monotone_invariance(pair):
    X, Y = pair
    Dh, Dl = pairwise_euclidean(X), pairwise_euclidean(Y)
    base = coranking(Dh, Dl).q
    assert np.array_equal(coranking(np.sqrt(Dh), Dl).q, base)
    assert np.array_equal(coranking(Dh, Dl ** 2 + 2 * Dl).q, base)


@settings(max_examples=40, deadline=None)
@given(clouds)
def test_full_stack_oracle(pair):
    X, Y = pair
    Dh, Dl = pairwise_euclidean(X), pairwise_euclidean(Y)
    q, curve, k_max, ql, qg = qscores_oracle(Dh, Dl)
    cm = coranking(Dh, Dl)
    s = q_scores(q_curve(cm))
    assert np.array_equal(cm.q, q)
    assert s.k_max == k_max
    assert abs(s.q_local - ql) <= 1e-12 and abs(s.q_global - qg) <= 1e-12
