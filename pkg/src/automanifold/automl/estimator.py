"""scikit-learn style front end to the search-then-refit pipeline."""

from sklearn.base import BaseEstimator, TransformerMixin

from .._validation import as_data_matrix
from .search import run_auto
from .space import build_search_space


class AutoManifold(TransformerMixin, BaseEstimator):
    """Select an embedding method and its settings, then embed the data.

    Parameters
    ----------
    kind : {"dynamic", "static"}, default="dynamic"
        Which search space to use.
    strategy : {"random", "bayes"}, default="bayes"
    budget : int, default=30
        Random-search trial count.
    n_init, n_iter : int, default=10, 20
        Bayesian-search initial and EI-guided trial counts.
    n_subgraphs : int, default=5
    random_state : int, default=0

    Attributes
    ----------
    best_config_ : HyperparamConfig
    embedding_ : ndarray of shape (n_embedded, n_dim)
    index_ : ndarray or None
        Rows of ``X`` kept in ``embedding_`` when the winner drops nodes.
    scores_ : QScores
        Full-data scores of the refit.
    report_ : dict
    trials_ : list of TrialResult
    """

    def __init__(self, kind="dynamic", strategy="bayes", budget=30, n_init=10, n_iter=20,
                 n_subgraphs=5, random_state=0):
        self.kind = kind
        self.strategy = strategy
        self.budget = budget
        self.n_init = n_init
        self.n_iter = n_iter
        self.n_subgraphs = n_subgraphs
        self.random_state = random_state

    def fit(self, X, y=None):
        X = as_data_matrix(X, min_samples=2)
        self.n_features_in_ = X.shape[1]
        result, (best, trials) = run_auto(build_search_space(self.kind), X, self.strategy,
                                          self.budget, self.n_init, self.n_iter,
                                          self.n_subgraphs, self.random_state)
        self.best_config_ = best.config
        self.trials_ = trials
        self.embedding_ = result.embedding.coords
        self.index_ = result.embedding.index
        self.scores_ = result.scores
        self.report_ = result.report
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_
