"""Trial evaluation on walk-sampled subgraphs."""

import time
import warnings
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .._validation import as_data_matrix, check_positive_int
from ..embed.dispatch import GRAPH_METHODS, embed
from ..errors import AutomanifoldError
from ..graph import build_knn_graph, sample_subgraph
from ..qscore import QScores, score_embedding
from .space import HyperparamConfig

TRIAL_EPOCHS = 100
FINAL_EPOCHS = 1000


@dataclass
class TrialResult:
    """Outcome of one config.

    ``per_subgraph[i]`` is ``None`` when subgraph ``i`` failed; the error
    message is in ``errors[i]``.
    """

    config: HyperparamConfig
    per_subgraph: List[Optional[QScores]]
    objective: float
    wall_time: float
    errors: List[Optional[str]] = field(default_factory=list)
    failed: bool = False

    def to_dict(self):
        return {"config": self.config.to_dict(), "objective": self.objective,
                "wall_time_s": self.wall_time, "failed": self.failed,
                "per_subgraph": [None if q is None else q.to_dict() for q in self.per_subgraph],
                "errors": list(self.errors)}


def objective_of(scores):
    return 0.5 * (scores.q_local + scores.q_global)


def embed_config(cfg, graph, epochs):
    """Embed ``graph.attrs`` with the method and settings of ``cfg``."""
    X = graph.attrs
    options = {}
    if cfg.method == "deepwalk":
        options = {"epochs": epochs, "lr": cfg.lr, "optimizer": cfg.optimizer,
                   "walk_length": cfg.walk_length}
    k = None
    if cfg.method == "lle":
        k = min(cfg.k, X.shape[0] - 1)
    return embed(cfg.method, X, cfg.n_dim, k=k, seed=cfg.seed,
                 graph=graph if cfg.method in GRAPH_METHODS else None, **options)


def evaluate_trial(cfg, data, n_subgraphs=5, seed=0, graph=None):
    """Mean subgraph objective ``(Q_local + Q_global) / 2`` of ``cfg``.

    Subgraph ``i`` comes from a walk of ``cfg.subgraph_walk`` nodes seeded
    with ``seed + i``.  ``graph`` may pass a prebuilt k-NN graph with
    ``k == cfg.k``.
    """
    n_subgraphs = check_positive_int(n_subgraphs, "n_subgraphs")
    t0 = time.perf_counter()
    if graph is None or graph.k != cfg.k:
        graph = build_knn_graph(as_data_matrix(data), cfg.k)
    scores, errors = [], []
    for i in range(n_subgraphs):
        sub = sample_subgraph(graph, cfg.subgraph_walk, seed + i)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                emb = embed_config(cfg, sub, TRIAL_EPOCHS)
                scores.append(score_embedding(sub.attrs, emb))
            errors.append(None)
        except (AutomanifoldError, np.linalg.LinAlgError) as exc:
            scores.append(None)
            errors.append(f"{type(exc).__name__}: {exc}")
    ok = [objective_of(s) for s in scores if s is not None]
    objective = float(np.mean(ok)) if ok else 0.0
    return TrialResult(cfg, scores, objective, time.perf_counter() - t0, errors, not ok)
