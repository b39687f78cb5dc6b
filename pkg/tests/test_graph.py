import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from oracles import components_brute, floyd_warshall, knn_brute

from automanifold.errors import DomainError, WalkError
from automanifold.graph import (build_knn_graph, dump_graph, from_edges, induced_subgraph,
                                largest_component, random_walk, sample_subgraph,
                                shortest_paths)


def complete(n):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return from_edges(np.arange(n, dtype=float)[:, None], edges)


def edge_set(g):
    return {tuple(e) for e in g.edges()}


def test_collinear_example():
    g = build_knn_graph(np.array([[0.0], [1.0], [10.0]]), 1)
    assert edge_set(g) == {(0, 1), (1, 2)}
    assert np.allclose(g.edge_weights(1), [1.0, 9.0])


def test_full_k_is_complete(rng):
    X = rng.normal(size=(9, 2))
    g = build_knn_graph(X, 8)
    assert g.n_edges == 36


def test_fkdv_graph_degree(fkdv):
    g = build_knn_graph(fkdv.values, 20)
    assert g.n_nodes == 1000 and g.degrees.min() >= 20


@pytest.mark.parametrize("k", [0, 5])
def test_k_out_of_range(k):
    with pytest.raises(DomainError):
        build_knn_graph(np.eye(5), k)


def test_single_point_rejected():
    with pytest.raises(DomainError):
        build_knn_graph(np.zeros((1, 2)), 1)


point_sets = st.integers(2, 25).flatmap(lambda n: arrays(
    np.float64, (n, 2), elements=st.floats(-10, 10, allow_nan=False)))


@settings(max_examples=60, deadline=None)
@given(point_sets, st.integers(1, 6))
def test_knn_graph_invariants(X, k):
    n = X.shape[0]
    k = min(k, n - 1)
    g = build_knn_graph(X, k)
    A = g.adjacency_dense()
    assert np.array_equal(A, A.T)
    assert np.all(np.diag(A) == 0)
    assert all(np.all(np.diff(g.neighbors(i)) > 0) for i in range(n))
    # each node keeps its own k nearest (brute force, ties to lower index)
    for i, nb in enumerate(knn_brute(X, k)):
        assert set(nb) <= set(g.neighbors(i).tolist())
    assert g.degrees.min() >= k
    for i in range(n):
        d = np.linalg.norm(X[g.neighbors(i)] - X[i], axis=1)
        assert np.allclose(g.edge_weights(i), d, rtol=0, atol=1e-12)
    # symmetrizing again changes nothing
    again = from_edges(X, g.edges(), k=k)
    assert edge_set(again) == edge_set(g)


def test_union_degree_can_exceed_twice_k():
    # a hub: every rim point's single nearest neighbor is the center
    ang = 2 * np.pi * np.arange(5) / 5
    X = np.vstack([[0.0, 0.0], np.column_stack([np.cos(ang), np.sin(ang)])])
    g = build_knn_graph(X, 1)
    assert g.degrees[0] == 5 > 2 * 1


def test_walk_path_graph():
    g = from_edges(np.zeros((2, 1)) + [[0.0], [1.0]], [(0, 1)])
    assert random_walk(g, 0, 3, seed=0).tolist() == [0, 1, 0]


def test_walk_uniform_on_k5():
    w = random_walk(complete(5), 0, 10_000, seed=1)
    freq = np.bincount(w, minlength=5) / w.size
    assert np.all(np.abs(freq - 0.2) <= 0.05 * 0.2)


def test_walk_deterministic_and_moves_along_edges():
    g = complete(6)
    a = random_walk(g, 2, 50, seed=7)
    assert np.array_equal(a, random_walk(g, 2, 50, seed=7))
    assert all(b in g.neighbors(a_) for a_, b in zip(a[:-1], a[1:]))


def test_walk_isolated_node():
    g = from_edges(np.zeros((3, 1)), [(0, 1)])
    with pytest.raises(WalkError):
        random_walk(g, 2, 3)
    assert random_walk(g, 2, 1).tolist() == [2]


def test_walk_bad_start():
    with pytest.raises(DomainError):
        random_walk(complete(3), 3, 2)


def test_subgraph_single_node():
    sub = sample_subgraph(complete(4), 1, seed=0)
    assert sub.n_nodes == 1 and sub.n_edges == 0


def test_subgraph_k5_regression():
    sub = sample_subgraph(complete(5), 100, seed=0)
    assert sub.n_nodes == 5 and sub.n_edges == 10
    assert sub.parent_index.tolist() == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("w", [80, 90, 100])
def test_subgraph_size_bound(fkdv, w):
    g = build_knn_graph(fkdv.values, 20)
    sub = sample_subgraph(g, w, seed=w)
    assert 1 <= sub.n_nodes <= w
    assert np.array_equal(sub.attrs, fkdv.values[sub.parent_index])


@settings(max_examples=30, deadline=None)
@given(point_sets, st.integers(1, 4), st.integers(1, 30), st.integers(0, 10_000))
def test_subgraph_edges_are_induced(X, k, w, seed):
    g = build_knn_graph(X, min(k, X.shape[0] - 1))
    sub = sample_subgraph(g, w, seed)
    nodes = sub.parent_index
    brute = {(int(a), int(b)) for a, b in g.edges() if a in nodes and b in nodes}
    mapped = {(int(nodes[a]), int(nodes[b])) for a, b in sub.edges()}
    assert mapped == brute


def test_paths_additive():
    g = from_edges(np.array([[0.0], [1.0], [3.0]]), [(0, 1), (1, 2)])
    geo = shortest_paths(g)
    assert geo.dist[0, 2] == 3.0 and geo.connected


def test_paths_floyd_warshall(rng):
    X = rng.normal(size=(30, 3))
    g = build_knn_graph(X, 3)
    e = g.edges()
    w = np.linalg.norm(X[e[:, 0]] - X[e[:, 1]], axis=1)
    fw = floyd_warshall(30, [(a, b, c) for (a, b), c in zip(e, w)])
    geo = shortest_paths(g)
    finite = np.isfinite(fw)
    assert np.array_equal(finite, np.isfinite(geo.dist))
    assert np.abs(geo.dist[finite] - fw[finite]).max() < 1e-12


def test_paths_disconnected():
    g = from_edges(np.array([[0.0], [1.0], [5.0], [6.0]]), [(0, 1), (2, 3)])
    geo = shortest_paths(g)
    assert not geo.connected
    assert np.isinf(geo.dist[0, 2]) and np.isinf(geo.dist[3, 1])


def test_paths_metric_properties(rng):
    g = build_knn_graph(rng.normal(size=(60, 4)), 4)
    D = shortest_paths(g).dist
    assert np.all(np.diag(D) == 0) and np.array_equal(D, D.T)
    i, j, k = rng.integers(60, size=(3, 1000))
    assert np.all(D[i, k] <= D[i, j] + D[j, k] + 1e-12)


def test_largest_component_cases(rng):
    g = complete(4)
    assert largest_component(g).parent_index.tolist() == [0, 1, 2, 3]
    g = from_edges(np.arange(5.0)[:, None], [(0, 1), (3, 4), (2, 3)])
    assert largest_component(g).parent_index.tolist() == [2, 3, 4]
    # size tie: component holding the smallest node id wins
    g = from_edges(np.arange(4.0)[:, None], [(2, 3), (0, 1)])
    assert largest_component(g).parent_index.tolist() == [0, 1]


def test_largest_component_two_blobs(rng):
    X = np.vstack([rng.normal(size=(20, 2)), rng.normal(size=(10, 2)) + 100.0])
    g = build_knn_graph(X, 2)
    comps = components_brute(30, g.edges().tolist())
    big = max(comps, key=len)
    comp = largest_component(g)
    assert comp.n_nodes == 20 == len(big)
    assert comp.parent_index.tolist() == big


def test_induced_subgraph_dedup():
    sub = induced_subgraph(complete(5), [3, 1, 3])
    assert sub.parent_index.tolist() == [1, 3] and sub.n_edges == 1


def test_dump_graph(tmp_path):
    g = build_knn_graph(np.array([[0.0], [1.0], [10.0]]), 1)
    dump_graph(g, tmp_path / "g")
    lines = (tmp_path / "g.edges.csv").read_text().splitlines()
    assert lines == ["src,dst,weight", "0,1,1", "1,2,9"]
    assert (tmp_path / "g.attrs.csv").read_text().splitlines() == ["0", "1", "10"]
