"""scikit-learn style wrappers around the embedding functions.

Each estimator stores the :class:`Embedding` of the last ``fit`` in
``embedding_result_`` and its coordinates in ``embedding_``.  Only
:class:`PCA` can map new rows (``transform``); the others are
transductive.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .._validation import as_data_matrix
from .dispatch import embed


class _EmbeddingEstimator(TransformerMixin, BaseEstimator):
    _method = None

    def _options(self):
        return {}

    def _neighbors(self):
        return None

    def fit(self, X, y=None):
        X = as_data_matrix(X)
        self.n_features_in_ = X.shape[1]
        seed = getattr(self, "random_state", None)
        result = embed(self._method, X, self.n_components, k=self._neighbors(),
                       seed=0 if seed is None else seed, **self._options())
        self.embedding_result_ = result
        self.embedding_ = result.coords
        self.index_ = result.index
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_


class PCA(_EmbeddingEstimator):
    """Principal component projection.

    Parameters
    ----------
    n_components : int, default=2
    """

    _method = "pca"

    def __init__(self, n_components=2):
        self.n_components = n_components

    def fit(self, X, y=None):
        super().fit(X)
        info = self.embedding_result_.info
        self.components_ = info["components"]
        self.explained_variance_ = info["eigenvalues"]
        self.mean_ = info["mean"]
        return self

    def transform(self, X):
        check_is_fitted(self, "components_")
        X = as_data_matrix(X)
        return (X - self.mean_) @ self.components_.T


class ClassicalMDS(_EmbeddingEstimator):
    """Torgerson scaling of the Euclidean distances between rows."""

    _method = "mds_classical"

    def __init__(self, n_components=2):
        self.n_components = n_components


class SmacofMDS(_EmbeddingEstimator):
    """Metric MDS by stress majorization."""

    _method = "mds_smacof"

    def __init__(self, n_components=2, max_iter=300, eps=1e-6, random_state=0):
        self.n_components = n_components
        self.max_iter = max_iter
        self.eps = eps
        self.random_state = random_state

    def _options(self):
        return {"max_iter": self.max_iter, "eps": self.eps}


class Isomap(_EmbeddingEstimator):
    """Geodesic MDS over a k-NN graph (largest component, see ``index_``)."""

    _method = "isomap"

    def __init__(self, n_components=2, n_neighbors=10):
        self.n_components = n_components
        self.n_neighbors = n_neighbors

    def _neighbors(self):
        return self.n_neighbors


class LocallyLinearEmbedding(_EmbeddingEstimator):
    """Locally linear embedding with regularized local Gram systems."""

    _method = "lle"

    def __init__(self, n_components=2, n_neighbors=10, reg=1e-3):
        self.n_components = n_components
        self.n_neighbors = n_neighbors
        self.reg = reg

    def _neighbors(self):
        return self.n_neighbors

    def _options(self):
        return {"reg": self.reg}


class SpectralEmbedding(_EmbeddingEstimator):
    """Laplacian eigenmaps on the unweighted k-NN graph."""

    _method = "se"

    def __init__(self, n_components=2, n_neighbors=10):
        self.n_components = n_components
        self.n_neighbors = n_neighbors

    def _neighbors(self):
        return self.n_neighbors


class DeepWalk(_EmbeddingEstimator):
    """Skip-gram node vectors from random walks on the k-NN graph.

    Parameters
    ----------
    n_components : int, default=2
    n_neighbors : int, default=10
    walk_length, walks_per_node, window, negatives : int
        Corpus and sampling sizes.
    epochs : int, default=1000
    learning_rate : float, default=1e-2
    optimizer : {"sgd", "adam"}
    random_state : int, default=0
    """

    _method = "deepwalk"

    def __init__(self, n_components=2, n_neighbors=10, walk_length=50, walks_per_node=10,
                 window=5, negatives=5, epochs=1000, learning_rate=1e-2, optimizer="sgd",
                 random_state=0):
        self.n_components = n_components
        self.n_neighbors = n_neighbors
        self.walk_length = walk_length
        self.walks_per_node = walks_per_node
        self.window = window
        self.negatives = negatives
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.optimizer = optimizer
        self.random_state = random_state

    def _neighbors(self):
        return self.n_neighbors

    def _options(self):
        return {"walk_length": self.walk_length, "walks_per_node": self.walks_per_node,
                "window": self.window, "negatives": self.negatives, "epochs": self.epochs,
                "lr": self.learning_rate, "optimizer": self.optimizer}


__all__ = ["PCA", "ClassicalMDS", "SmacofMDS", "Isomap", "LocallyLinearEmbedding",
           "SpectralEmbedding", "DeepWalk"]
