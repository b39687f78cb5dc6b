"""One entry point for every embedding method by name."""

from .._validation import as_data_matrix, pairwise_euclidean
from ..errors import DomainError
from ..graph import ProximityGraph, build_knn_graph
from .deepwalk import deepwalk
from .methods import classical_mds, isomap, lle, pca, smacof_mds, spectral_embedding

METHODS = ("pca", "mds_classical", "mds_smacof", "isomap", "lle", "se", "deepwalk")
GRAPH_METHODS = ("isomap", "se", "deepwalk")


def embed(method, data, n_dim, k=None, seed=0, graph=None, **options):
    """Embed the rows of ``data`` with ``method``.

    Parameters
    ----------
    method : str
        One of :data:`METHODS`.
    data : (N, d) array_like
        Node attributes.
    n_dim : int
        Output dimension.
    k : int, optional
        Neighbor count for the graph-based methods and LLE.
    seed : int
        Seed for SMACOF initialization and DeepWalk.
    graph : ProximityGraph, optional
        Prebuilt graph over ``data``; graph methods use it instead of
        building one from ``k``.
    **options
        Forwarded to the method (``reg`` for LLE, ``max_iter`` for SMACOF,
        ``epochs``, ``lr`` ... for DeepWalk).
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; valid: {', '.join(METHODS)}")
    X = as_data_matrix(data)
    if method in GRAPH_METHODS or method == "lle":
        if graph is None and k is None:
            raise DomainError(f"{method} needs k or a graph")
    if method == "pca":
        return pca(X, n_dim, **options)
    if method == "mds_classical":
        return classical_mds(pairwise_euclidean(X), n_dim, **options)
    if method == "mds_smacof":
        return smacof_mds(pairwise_euclidean(X), n_dim, seed=seed, **options)
    if method == "lle":
        return lle(X, graph.k if k is None else k, n_dim, **options)
    if graph is None:
        graph = build_knn_graph(X, k)
    elif not isinstance(graph, ProximityGraph):
        raise DomainError("graph must be a ProximityGraph")
    if method == "isomap":
        return isomap(graph, n_dim=n_dim)
    if method == "se":
        return spectral_embedding(graph, n_dim=n_dim)
    return deepwalk(graph, n_dim=n_dim, seed=seed, **options)
