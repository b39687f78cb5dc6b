"""Random search, GP-EI Bayesian search and the final full-graph refit."""

import json
import time
import warnings
from dataclasses import dataclass

import numpy as np

from .._validation import as_data_matrix, check_positive_int
from ..errors import DomainError
from ..graph import build_knn_graph
from ..qscore import score_embedding
from .gp import encode_config, expected_improvement, gp_fit
from .trial import FINAL_EPOCHS, embed_config, evaluate_trial


class _TrialRunner:
    """Evaluates configs once each, reusing k-NN graphs across trials."""

    def __init__(self, data, n_subgraphs, seed):
        self.data = as_data_matrix(data, min_samples=2)
        self.n_subgraphs = check_positive_int(n_subgraphs, "n_subgraphs")
        self.seed = seed
        self.graphs = {}
        self.done = {}

    def __call__(self, cfg):
        key = cfg.key()
        if key not in self.done:
            if cfg.k > self.data.shape[0] - 1:
                raise DomainError(f"k={cfg.k} needs more than {self.data.shape[0]} points")
            if cfg.k not in self.graphs:
                self.graphs[cfg.k] = build_knn_graph(self.data, cfg.k)
            self.done[key] = evaluate_trial(cfg, self.data, self.n_subgraphs, self.seed,
                                            graph=self.graphs[cfg.k])
        return self.done[key]


def _best(trials):
    # max objective, earliest trial on ties
    return trials[int(np.argmax([t.objective for t in trials]))]


def _initial(space, runner, budget, rng, seed):
    return [runner(space.sample(rng, seed)) for _ in range(budget)]


def random_search(space, data, budget=30, n_subgraphs=5, seed=0):
    """``budget`` configs drawn uniformly with replacement; returns ``(best, trials)``.

    A config drawn twice is evaluated once and reported at each draw.
    """
    budget = check_positive_int(budget, "budget")
    runner = _TrialRunner(data, n_subgraphs, seed)
    trials = _initial(space, runner, budget, np.random.default_rng(seed), seed)
    return _best(trials), trials


def bayesian_search(space, data, n_init=10, n_iter=20, n_subgraphs=5, seed=0):
    """GP-EI search: ``n_init`` random trials, then ``n_iter`` argmax-EI trials.

    EI is scanned over every untried config; ties go to the lexicographically
    smallest encoding.  Stops early once the space is exhausted.
    """
    n_init = check_positive_int(n_init, "n_init", minimum=2)
    n_iter = check_positive_int(n_iter, "n_iter", minimum=0)
    runner = _TrialRunner(data, n_subgraphs, seed)
    trials = _initial(space, runner, n_init, np.random.default_rng(seed), seed)
    pool = space.enumerate(seed)
    enc = np.array([encode_config(c, space) for c in pool])
    # lexicographic rank of each encoding, for tie-breaking
    lex = np.empty(len(pool), dtype=np.int64)
    lex[np.lexsort(enc.T[::-1])] = np.arange(len(pool))
    for _ in range(n_iter):
        tried = {t.config.key() for t in trials}
        free = np.array([c.key() not in tried for c in pool])
        if not free.any():
            break
        if len(tried) >= 2:
            gp = gp_fit(trials, space)
            ei = np.asarray(expected_improvement(gp, enc[free], max(t.objective for t in trials)))
            cand = np.flatnonzero(free)[ei == ei.max()]
        else:
            cand = np.flatnonzero(free)
        trials.append(runner(pool[cand[np.argmin(lex[cand])]]))
    return _best(trials), trials


@dataclass
class FinalResult:
    embedding: object
    scores: object
    report: dict


def finalize(best, data, selection_time=None, trials=None, strategy=None, dataset=None):
    """Refit ``best`` on the full k-NN graph and score it on the full data."""
    X = as_data_matrix(data, min_samples=2)
    t0 = time.perf_counter()
    graph = build_knn_graph(X, min(best.k, X.shape[0] - 1))
    emb = embed_config(best, graph, FINAL_EPOCHS)
    with warnings.catch_warnings():
        warnings.simplefilter("always", RuntimeWarning)
        scores = score_embedding(X, emb)
    elapsed = time.perf_counter() - t0
    trials = trials or []
    report = {"dataset": dataset, "strategy": strategy, "winner_config": best.to_dict(),
              "q_local": scores.q_local, "q_global": scores.q_global, "k_max": scores.k_max,
              "selection_time_s": selection_time, "finalize_time_s": elapsed,
              "n_trials": len(trials), "trials": [t.to_dict() for t in trials]}
    return FinalResult(emb, scores, report)


def run_auto(space, data, strategy="random", budget=30, n_init=10, n_iter=20, n_subgraphs=5,
             seed=0, dataset=None):
    """Search then finalize; returns ``(FinalResult, (best_trial, trials))``."""
    t0 = time.perf_counter()
    if strategy == "random":
        best, trials = random_search(space, data, budget, n_subgraphs, seed)
    elif strategy == "bayes":
        best, trials = bayesian_search(space, data, n_init, n_iter, n_subgraphs, seed)
    else:
        raise DomainError(f"strategy must be one of: random, bayes (got {strategy!r})")
    selection = time.perf_counter() - t0
    result = finalize(best.config, data, selection, trials, strategy, dataset)
    return result, (best, trials)


def report_json(report):
    return json.dumps(report, indent=2, default=float)


def report_table(report):
    """Aligned text with the columns Model, Accuracy, Time (s)."""
    model = report["winner_config"]["method"]
    acc = f"Q_local={report['q_local']:.2f}, Q_global={report['q_global']:.2f}"
    total = (report["selection_time_s"] or 0.0) + report["finalize_time_s"]
    rows = [("Strategy", "Model", "Accuracy", "Time (s)"),
            (str(report["strategy"]), model, acc, f"{total:.2f}")]
    widths = [max(len(r[j]) for r in rows) for j in range(4)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
                     for r in rows) + "\n"
