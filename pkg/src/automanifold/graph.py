"""Spatial-temporal k-NN proximity graphs.

Nodes are rows of a data matrix (time points); the rows themselves are the
node attributes.  Graphs are stored in CSR form with sorted neighbor lists
and are treated as immutable once built.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, dijkstra

from ._io import atomic_write_text, fmt
from ._validation import as_data_matrix, check_positive_int, pairwise_euclidean
from .errors import DomainError, WalkError


@dataclass(frozen=True, eq=False)
class ProximityGraph:
    """Undirected weighted graph over the rows of ``attrs``.

    Attributes
    ----------
    attrs : (N, d) ndarray
        Node attributes.
    indptr, indices, weights : ndarray
        CSR adjacency; ``indices[indptr[i]:indptr[i + 1]]`` are the sorted
        neighbors of node ``i`` and ``weights`` the Euclidean attribute
        distances of those edges.  Every edge appears in both directions.
    k : int or None
        Neighbor count used at construction (``None`` for induced graphs
        built by hand).
    parent_index : ndarray or None
        For subgraphs, ``parent_index[i]`` is node ``i``'s id in the graph
        it was cut from.
    """

    attrs: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    k: Optional[int] = None
    parent_index: Optional[np.ndarray] = None

    @property
    def n_nodes(self):
        return self.attrs.shape[0]

    @property
    def n_edges(self):
        return self.indices.size // 2

    @property
    def degrees(self):
        return np.diff(self.indptr)

    def neighbors(self, i):
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edge_weights(self, i):
        return self.weights[self.indptr[i]:self.indptr[i + 1]]

    def edges(self):
        """``(E, 2)`` array of undirected edges ``(i, j)`` with ``i < j``."""
        src = np.repeat(np.arange(self.n_nodes), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_csr(self, weighted=True):
        data = self.weights if weighted else np.ones_like(self.weights)
        n = self.n_nodes
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def adjacency_dense(self):
        """Unweighted 0/1 adjacency matrix."""
        A = np.zeros((self.n_nodes, self.n_nodes))
        A[np.repeat(np.arange(self.n_nodes), self.degrees), self.indices] = 1.0
        return A


def from_edges(attrs, edges, k=None, parent_index=None):
    """Build a symmetric graph from an undirected edge list.

    Duplicate edges and self-loops are dropped; weights are recomputed from
    ``attrs``.
    """
    attrs = np.asarray(attrs, dtype=np.float64)
    n = attrs.shape[0]
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    edges = edges[edges[:, 0] != edges[:, 1]]
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    und = np.unique(np.column_stack([lo, hi]), axis=0) if lo.size else np.empty((0, 2), np.int64)
    src = np.concatenate([und[:, 0], und[:, 1]])
    dst = np.concatenate([und[:, 1], und[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    weights = np.linalg.norm(attrs[src] - attrs[dst], axis=1) if src.size else np.empty(0)
    return ProximityGraph(attrs, indptr, dst, weights, k, parent_index)


def knn_indices(data, k):
    """The ``k`` nearest rows of every row (self excluded, ties to lower index)."""
    D = pairwise_euclidean(data)
    np.fill_diagonal(D, np.inf)
    return np.argsort(D, axis=1, kind="stable")[:, :k]


def build_knn_graph(data, k):
    """Symmetrized (union) k-nearest-neighbor graph over the rows of ``data``."""
    data = as_data_matrix(data, min_samples=2)
    n = data.shape[0]
    k = check_positive_int(k, "k")
    if k > n - 1:
        raise DomainError(f"k must be in [1, {n - 1}] for {n} points, got {k}")
    nbrs = knn_indices(data, k)
    src = np.repeat(np.arange(n), k)
    return from_edges(data, np.column_stack([src, nbrs.ravel()]), k=k)


def induced_subgraph(g, nodes):
    """Subgraph on ``nodes`` (sorted, deduplicated) with inherited edges."""
    nodes = np.unique(np.asarray(nodes, dtype=np.int64))
    local = np.full(g.n_nodes, -1, dtype=np.int64)
    local[nodes] = np.arange(nodes.size)
    src = np.repeat(np.arange(g.n_nodes), g.degrees)
    keep = (local[src] >= 0) & (local[g.indices] >= 0)
    edges = np.column_stack([local[src[keep]], local[g.indices[keep]]])
    return from_edges(g.attrs[nodes], edges, k=g.k, parent_index=nodes)


def _walk(g, start, length, rng):
    walk = np.empty(length, dtype=np.int64)
    walk[0] = start
    deg = g.degrees
    for t in range(1, length):
        cur = walk[t - 1]
        if deg[cur] == 0:
            raise WalkError(f"node {cur} is isolated; the walk cannot continue")
        walk[t] = g.indices[g.indptr[cur] + rng.integers(deg[cur])]
    return walk


def random_walk(g, start, length, seed=0):
    """Uniform random walk of ``length`` nodes starting at ``start``."""
    length = check_positive_int(length, "length")
    if not 0 <= start < g.n_nodes:
        raise DomainError(f"start node {start} out of range")
    return _walk(g, int(start), length, np.random.default_rng(seed))


def random_walks(g, starts, length, rng):
    """Many independent uniform walks advanced in lockstep.

    Returns an ``(len(starts), length)`` array.
    """
    starts = np.asarray(starts, dtype=np.int64)
    deg = g.degrees
    if (deg[starts] == 0).any() and length > 1:
        raise WalkError("a walk starts at an isolated node")
    walks = np.empty((starts.size, length), dtype=np.int64)
    walks[:, 0] = starts
    for t in range(1, length):
        cur = walks[:, t - 1]
        offs = (rng.random(cur.size) * deg[cur]).astype(np.int64)
        walks[:, t] = g.indices[g.indptr[cur] + offs]
    return walks


def sample_subgraph(g, walk_length, seed=0):
    """Subgraph on the nodes visited by a uniform walk from a random start."""
    walk_length = check_positive_int(walk_length, "walk_length")
    rng = np.random.default_rng(seed)
    start = int(rng.integers(g.n_nodes))
    return induced_subgraph(g, _walk(g, start, walk_length, rng))


@dataclass
class GeodesicMatrix:
    dist: np.ndarray
    connected: bool


def shortest_paths(g):
    """All-pairs weighted shortest paths (Dijkstra from every source)."""
    if g.n_nodes == 0:
        return GeodesicMatrix(np.zeros((0, 0)), True)
    dist = dijkstra(g.to_csr(), directed=False)
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0.0)
    return GeodesicMatrix(dist, bool(np.isfinite(dist).all()))


def largest_component(g):
    """Induced subgraph on the largest connected component.

    Ties go to the component containing the smallest node id.
    """
    n_comp, labels = connected_components(g.to_csr(), directed=False)
    if n_comp == 1:
        return induced_subgraph(g, np.arange(g.n_nodes))
    sizes = np.bincount(labels, minlength=n_comp)
    first = np.full(n_comp, g.n_nodes)
    np.minimum.at(first, labels, np.arange(g.n_nodes))
    best = min(range(n_comp), key=lambda c: (-sizes[c], first[c]))
    return induced_subgraph(g, np.flatnonzero(labels == best))


def dump_graph(g, prefix):
    """Write ``<prefix>.edges.csv`` (src,dst,weight) and ``<prefix>.attrs.csv``."""
    e = g.edges()
    lines = ["src,dst,weight"]
    for i, j in e:
        w = g.edge_weights(i)[np.searchsorted(g.neighbors(i), j)]
        lines.append(f"{i},{j},{fmt(w)}")
    atomic_write_text(f"{prefix}.edges.csv", "\n".join(lines) + "\n")
    rows = [",".join(fmt(v) for v in row) for row in g.attrs]
    atomic_write_text(f"{prefix}.attrs.csv", "\n".join(rows) + "\n")
