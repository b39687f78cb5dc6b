"""Spectral embeddings: PCA, classical and SMACOF MDS, Isomap, LLE and
Laplacian eigenmaps."""

import warnings

import numpy as np

from .._validation import (as_data_matrix, as_distance_matrix, check_positive_int,
                           pairwise_euclidean)
from ..errors import DomainError, NumericalError
from ..graph import ProximityGraph, build_knn_graph, knn_indices, largest_component, shortest_paths
from ._types import Embedding
from .eig import sym_eig


def pca(data, n_dim):
    """Project centered data on the top ``n_dim`` covariance eigenvectors.

    Column ``j`` of the result has sample variance equal to the ``j``-th
    eigenvalue (``ddof=1``).
    """
    X = as_data_matrix(data)
    n, d = X.shape
    n_dim = check_positive_int(n_dim, "n_dim")
    if n_dim > min(n, d):
        raise DomainError(f"n_dim must be in [1, {min(n, d)}], got {n_dim}")
    mean = X.mean(axis=0)
    Xc = X - mean
    cov = Xc.T @ Xc / max(n - 1, 1)
    eig = sym_eig(cov, "top", n_dim)
    return Embedding(Xc @ eig.vectors, "pca", {"n_dim": n_dim},
                     info={"eigenvalues": eig.values, "components": eig.vectors.T,
                           "mean": mean})


def double_center(D):
    D2 = D ** 2
    row = D2.mean(axis=1, keepdims=True)
    return -0.5 * (D2 - row - row.T + D2.mean())


def classical_mds(dist, n_dim):
    """Torgerson scaling of a distance matrix.

    Negative eigenvalues among the selected ones are clipped to zero; the
    fraction of absolute spectral mass that is negative is reported in
    ``info["negative_mass"]``, and ``info["n_clipped"]`` counts how many
    selected eigenvalues were clipped.
    """
    D = as_distance_matrix(dist)
    n = D.shape[0]
    n_dim = check_positive_int(n_dim, "n_dim")
    if n == 1:
        return Embedding(np.zeros((1, n_dim)), "mds_classical", {"n_dim": n_dim},
                         info={"negative_mass": 0.0, "n_clipped": 0})
    B = double_center(D)
    eig = sym_eig(B, "top", n)
    values = eig.values
    total = np.abs(values).sum()
    negative_mass = float(np.abs(values[values < 0]).sum() / total) if total > 0 else 0.0
    m = min(n_dim, n)
    sel = values[:m]
    n_clipped = int((sel < 0).sum())
    if n_clipped:
        warnings.warn(f"classical MDS clipped {n_clipped} negative eigenvalue(s)",
                      RuntimeWarning, stacklevel=2)
    coords = eig.vectors[:, :m] * np.sqrt(np.maximum(sel, 0.0))
    if m < n_dim:
        coords = np.hstack([coords, np.zeros((n, n_dim - m))])
    return Embedding(coords, "mds_classical", {"n_dim": n_dim},
                     info={"eigenvalues": sel, "negative_mass": negative_mass,
                           "n_clipped": n_clipped})


def _stress(X, D):
    E = pairwise_euclidean(X)
    return 0.5 * float(((E - D) ** 2).sum())


def smacof_mds(dist, n_dim, max_iter=300, eps=1e-6, seed=0, init=None):
    """Metric MDS by stress majorization (Guttman transform).

    Stress is ``sum_{i<j} (|x_i - x_j| - D_ij)^2``.  Iteration stops once
    the relative decrease drops below ``eps``, the configuration fits
    ``D`` to round-off, or ``max_iter`` is reached.  The full stress
    sequence (starting with the initial configuration) is kept in
    ``info["stress"]``.
    """
    D = as_distance_matrix(dist)
    n = D.shape[0]
    n_dim = check_positive_int(n_dim, "n_dim")
    max_iter = check_positive_int(max_iter, "max_iter")
    if not eps > 0:
        raise DomainError("eps must be positive")
    if init is None:
        rng = np.random.default_rng(seed)
        X = rng.standard_normal((n, n_dim))
    else:
        X = np.array(init, dtype=np.float64)
        if X.shape != (n, n_dim):
            raise DomainError(f"init must have shape {(n, n_dim)}")
    floor = 1e-16 * 0.5 * float((D ** 2).sum())
    history = [_stress(X, D)]
    for _ in range(max_iter):
        E = pairwise_euclidean(X)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(E > 0, D / E, 0.0)
        Bm = -ratio
        np.fill_diagonal(Bm, 0.0)
        np.fill_diagonal(Bm, -Bm.sum(axis=1))
        X = Bm @ X / n
        history.append(_stress(X, D))
        prev, cur = history[-2], history[-1]
        if cur <= floor or prev - cur <= eps * prev:
            break
    return Embedding(X - X.mean(axis=0), "mds_smacof",
                     {"n_dim": n_dim, "max_iter": max_iter, "eps": eps}, seed=seed,
                     info={"stress": np.array(history), "n_iter": len(history) - 1})


def _graph_from(source, k):
    if isinstance(source, ProximityGraph):
        return source
    if k is None:
        raise DomainError("k is required when embedding a data matrix")
    return build_knn_graph(source, k)


def isomap(source, k=None, n_dim=2):
    """Classical MDS on graph geodesics of the largest connected component.

    ``source`` is a data matrix (a k-NN graph is built with ``k``) or a
    ready :class:`~automanifold.graph.ProximityGraph`.  ``index`` on the
    result lists the retained nodes.
    """
    g = _graph_from(source, k)
    comp = largest_component(g)
    geo = shortest_paths(comp)
    emb = classical_mds(geo.dist, n_dim)
    return Embedding(emb.coords, "isomap", {"k": g.k, "n_dim": n_dim},
                     index=comp.parent_index if comp.n_nodes < g.n_nodes else None,
                     info=emb.info)


def lle_weights(data, k, reg=1e-3):
    """Barycentric reconstruction weights over the ``k`` nearest neighbors.

    Returns ``(neighbors, weights)``, both ``(N, k)``; each weight row sums
    to one.  The local Gram matrix gets ``reg * trace(G) / k`` added to its
    diagonal.
    """
    X = as_data_matrix(data, min_samples=2)
    n = X.shape[0]
    k = check_positive_int(k, "k")
    if k > n - 1:
        raise DomainError(f"k must be in [1, {n - 1}], got {k}")
    if reg < 0:
        raise DomainError("reg must be nonnegative")
    nbrs = knn_indices(X, k)
    W = np.empty((n, k))
    ones = np.ones(k)
    for i in range(n):
        Z = X[nbrs[i]] - X[i]
        G = Z @ Z.T
        tr = np.trace(G)
        G.flat[::k + 1] += reg * tr / k if tr > 0 else reg
        if reg == 0 and np.linalg.cond(G) > 1e12:
            raise NumericalError(f"local Gram system of point {i} is singular; use reg > 0")
        try:
            w = np.linalg.solve(G, ones)
        except np.linalg.LinAlgError as exc:
            msg = f"local Gram system of point {i} is singular; use reg > 0"
            raise NumericalError(msg) from exc
        W[i] = w / w.sum()
    return nbrs, W


def lle(data, k, n_dim=2, reg=1e-3):
    """Locally linear embedding.

    Coordinates are the bottom eigenvectors of ``(I - W)^T (I - W)`` after
    the constant one, scaled to unit column variance (``ddof=0``).
    """
    X = as_data_matrix(data, min_samples=2)
    n = X.shape[0]
    n_dim = check_positive_int(n_dim, "n_dim")
    if n_dim + 1 > n:
        raise DomainError(f"n_dim={n_dim} needs at least {n_dim + 1} points")
    nbrs, w = lle_weights(X, k, reg)
    M = np.eye(n)
    rows = np.repeat(np.arange(n), nbrs.shape[1])
    np.add.at(M, (rows, nbrs.ravel()), -w.ravel())
    M = M.T @ M
    eig = sym_eig(M, "bottom", n_dim + 1)
    coords = eig.vectors[:, 1:] * np.sqrt(n)
    return Embedding(coords, "lle", {"k": k, "n_dim": n_dim, "reg": reg},
                     info={"eigenvalues": eig.values[1:]})


def normalized_laplacian(A):
    d = A.sum(axis=1)
    inv = 1.0 / np.sqrt(d)
    return np.eye(A.shape[0]) - inv[:, None] * A * inv[None, :], d


def spectral_embedding(source, k=None, n_dim=2):
    """Laplacian eigenmaps on the unweighted graph's largest component.

    Uses ``L = I - D^-1/2 A D^-1/2``; the eigenvectors of the ``n_dim``
    smallest nonzero eigenvalues are rescaled row-wise by ``d_i^-1/2``.
    """
    g = _graph_from(source, k)
    n_dim = check_positive_int(n_dim, "n_dim")
    comp = largest_component(g)
    if n_dim + 1 > comp.n_nodes:
        raise DomainError(f"n_dim={n_dim} needs a component of at least {n_dim + 1} nodes")
    L, d = normalized_laplacian(comp.adjacency_dense())
    eig = sym_eig(L, "bottom", n_dim + 1)
    coords = eig.vectors[:, 1:] / np.sqrt(d)[:, None]
    return Embedding(coords, "se", {"k": g.k, "n_dim": n_dim},
                     index=comp.parent_index if comp.n_nodes < g.n_nodes else None,
                     info={"eigenvalues": eig.values[1:]})
