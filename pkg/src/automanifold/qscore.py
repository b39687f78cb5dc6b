"""Co-ranking matrix and the scale-independent quality scores.

Ranks are strict: within row ``i`` the points ``j != i`` are ordered by
distance with ties going to the smaller index, so every row of the rank
matrix is a permutation of ``1..N-1`` and every row and column of the
co-ranking matrix sums to ``N``.
"""

import json
import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_data_matrix, as_distance_matrix, pairwise_euclidean
from .errors import DomainError


def rank_matrix(dist):
    """``R[i, j]`` = 1-based rank of ``j`` among the neighbors of ``i``.

    The diagonal is 0.
    """
    D = as_distance_matrix(dist)
    n = D.shape[0]
    D = D.copy()
    np.fill_diagonal(D, -np.inf)
    order = np.argsort(D, axis=1, kind="stable")
    R = np.empty((n, n), dtype=np.int64)
    R[np.arange(n)[:, None], order] = np.arange(n)[None, :]
    return R


@dataclass
class CoRankingMatrix:
    q: np.ndarray
    n: int


def coranking(dist_high, dist_low):
    """Co-ranking counts ``q[k-1, l-1] = #{(i, j): rank_high = k, rank_low = l}``."""
    Rh = rank_matrix(dist_high)
    Rl = rank_matrix(dist_low)
    if Rh.shape != Rl.shape:
        raise DomainError(f"distance matrices differ in size: {Rh.shape} vs {Rl.shape}")
    n = Rh.shape[0]
    if n < 2:
        raise DomainError("co-ranking needs at least two points")
    off = ~np.eye(n, dtype=bool)
    flat = (Rh[off] - 1) * (n - 1) + (Rl[off] - 1)
    q = np.bincount(flat, minlength=(n - 1) ** 2).reshape(n - 1, n - 1)
    return CoRankingMatrix(q, n)


def q_curve(cm):
    """``Q(K) = sum(q[:K, :K]) / (K N)`` for ``K = 1..N-1``."""
    q = np.asarray(cm.q, dtype=np.int64)
    m = q.shape[0]
    # block sum S_K grows by the K-th row and column segments
    rows = np.cumsum(q, axis=1)[np.arange(m), np.arange(m)]
    cols = np.cumsum(q, axis=0)[np.arange(m), np.arange(m)]
    blocks = np.cumsum(rows + cols - np.diag(q))
    K = np.arange(1, m + 1)
    return blocks / (K * cm.n)


@dataclass
class QScores:
    curve: np.ndarray
    k_max: int
    q_local: float
    q_global: float

    def to_dict(self, include_curve=False):
        out = {"k_max": int(self.k_max), "q_local": float(self.q_local),
               "q_global": float(self.q_global)}
        if include_curve:
            out["curve"] = [float(v) for v in self.curve]
        return out

    def to_json(self, include_curve=False):
        return json.dumps(self.to_dict(include_curve), indent=2)


def q_scores(curve):
    """Split the Q-curve at ``K_max = argmax_K Q(K) - K / (N - 1)``.

    Both means include ``K_max``; the smallest maximizer wins ties.
    """
    curve = np.asarray(curve, dtype=np.float64)
    m = curve.size
    if m < 1:
        raise DomainError("empty Q-curve")
    K = np.arange(1, m + 1)
    k_max = int(np.argmax(curve - K / m)) + 1
    return QScores(curve, k_max, float(curve[:k_max].mean()), float(curve[k_max - 1:].mean()))


def score_embedding(high, emb):
    """Q-scores of ``emb`` against the high-dimensional rows ``high``.

    When the embedding carries an ``index`` (some points dropped), only the
    matching rows of ``high`` are compared.
    """
    X = as_data_matrix(high)
    coords = emb.coords if hasattr(emb, "coords") else as_data_matrix(emb)
    index = getattr(emb, "index", None)
    if index is not None:
        X = X[index]
    if X.shape[0] != coords.shape[0]:
        raise DomainError(f"row mismatch: {X.shape[0]} data rows vs {coords.shape[0]} embedded")
    Dh = pairwise_euclidean(X)
    if X.shape[0] > 1 and not (Dh[~np.eye(X.shape[0], dtype=bool)] > 0).all():
        warnings.warn("coincident points: ranks resolved by the index tie rule",
                      RuntimeWarning, stacklevel=2)
    return q_scores(q_curve(coranking(Dh, pairwise_euclidean(coords))))
