import numpy as np
import pytest

from mbbp import BipartiteGraph

from conftest import T1_EDGES
from oracle import corpus_graph


def test_empty_graph():
    g = BipartiteGraph(0, 0, [])
    assert g.n == 0
    assert g.alive_counts() == (0, 0)
    assert g.min_alive_degree() is None
    assert g.connected_components() == []


def test_t1_degrees(t1):
    assert list(t1.live_degree) == [3, 3, 2, 3, 3, 2]
    assert t1.edge_count == 8


def test_fig1_quoted_neighborhoods(fig1):
    # 1-based labels: N(1) = {5,6,8} and N(5) = {1,2,3,4}
    assert list(fig1.neighbors(0)) == [4, 5, 7]
    assert list(fig1.neighbors(4)) == [0, 1, 2, 3]
    assert fig1.edge_count == 13


def test_neighbors_sorted_and_alive(t1):
    for v in range(t1.n):
        ns = t1.neighbors(v)
        assert list(ns) == sorted(ns)
    t1.remove_vertex(3)
    assert list(t1.neighbors(0)) == [4, 5]
    with pytest.raises(ValueError):
        t1.neighbors(3)


def test_neighbors_out_of_range(t1):
    with pytest.raises(ValueError):
        t1.neighbors(6)
    with pytest.raises(ValueError):
        t1.neighbors(-1)


def test_duplicate_edges_collapse():
    g = BipartiteGraph(2, 2, [(0, 0), (0, 0), (1, 1), (1, 1), (1, 1)])
    assert g.edge_count == 2
    assert list(g.neighbors(0)) == [2]


def test_out_of_range_edge_names_offender():
    with pytest.raises(ValueError, match=r"\(1, 5\)"):
        BipartiteGraph(2, 2, [(0, 0), (1, 5)])


def test_has_edge(t1):
    assert t1.has_edge(0, 3)
    assert t1.has_edge(3, 0)
    assert not t1.has_edge(2, 5)
    assert not t1.has_edge(0, 1)


def test_remove_vertex_decrements_neighbors(t1):
    t1.remove_vertex(2)
    assert list(t1.live_degree[3:5]) == [2, 2]
    assert t1.live_degree[5] == 2
    assert t1.alive_counts() == (2, 3)


def test_double_removal_rejected(t1):
    t1.remove_vertex(0)
    with pytest.raises(ValueError):
        t1.remove_vertex(0)


def test_single_vertex_graph_removal():
    g = BipartiteGraph(1, 0, [])
    g.remove_vertex(0)
    assert g.alive_counts() == (0, 0)
    assert g.min_alive_degree() is None


def test_remove_u3_v3_leaves_k22(t1):
    t1.remove_vertex(2)
    t1.remove_vertex(5)
    assert t1.alive_counts() == (2, 2)
    assert t1.edge_count == 4
    for u in (0, 1):
        assert list(t1.neighbors(u)) == [3, 4]


def test_min_alive_degree(t1, k33):
    assert t1.min_alive_degree() == 2
    assert k33.min_alive_degree() == 3


def test_components_t1_connected(t1):
    comps = t1.connected_components()
    assert len(comps) == 1
    assert sorted(comps[0]) == list(range(6))


def test_components_disjoint_t1_copies():
    edges = list(T1_EDGES) + [(u + 3, v + 3) for u, v in T1_EDGES]
    g = BipartiteGraph(6, 6, edges)
    comps = g.connected_components()
    assert [len(c) for c in comps] == [6, 6]
    # deterministic order: by smallest contained id
    assert comps[0][0] < comps[1][0]


def test_components_isolated_singletons():
    g = BipartiteGraph(2, 2, [(0, 0)])
    comps = g.connected_components()
    assert [sorted(c) for c in comps] == [[0, 2], [1], [3]]


def test_components_partition_random():
    for seed in range(5):
        g = corpus_graph(6, 6, 0.2, 400 + seed)
        comps = g.connected_components()
        seen = sorted(v for c in comps for v in c)
        assert seen == [int(v) for v in g.alive_ids()]
        lookup = {}
        for i, c in enumerate(comps):
            for v in c:
                lookup[v] = i
        for u, v in g.iter_edges():
            assert lookup[u] == lookup[v]


def test_induced_subgraph_k22(t1):
    sub, id_map = t1.induced_subgraph([0, 1, 3, 4])
    assert sub.alive_counts() == (2, 2)
    assert sub.edge_count == 4
    assert sorted(int(v) for v in id_map) == [0, 1, 3, 4]


def test_induced_subgraph_identity(t1):
    sub, id_map = t1.induced_subgraph(list(range(6)))
    assert sub.edge_count == t1.edge_count
    assert list(id_map) == list(range(6))


def test_induced_single_vertex(t1):
    sub, id_map = t1.induced_subgraph([0])
    assert sub.n == 1
    assert sub.edge_count == 0
    assert list(id_map) == [0]


def test_induced_rejects_dead(t1):
    t1.remove_vertex(1)
    with pytest.raises(ValueError):
        t1.induced_subgraph([0, 1, 3])


def test_induced_edge_count_matches_brute_force():
    for seed in range(6):
        g = corpus_graph(7, 6, 0.5, 500 + seed)
        rng = np.random.default_rng(seed)
        vs = [int(v) for v in rng.choice(g.alive_ids(), size=7, replace=False)]
        sub, id_map = g.induced_subgraph(vs)
        want = sum(1 for u, v in g.iter_edges() if u in vs and v in vs)
        assert sub.edge_count == want
        # every subgraph edge maps back to an original edge
        for a, b in sub.iter_edges():
            assert g.has_edge(int(id_map[a]), int(id_map[b]))


def test_symmetry_random():
    g = corpus_graph(7, 7, 0.5, 321)
    for v in range(g.n):
        for w in g.neighbors(v):
            assert v in set(int(x) for x in g.neighbors(int(w)))


def test_degree_consistency_after_removals():
    g = corpus_graph(7, 7, 0.5, 77)
    rng = np.random.default_rng(0)
    for _ in range(6):
        alive = g.alive_ids()
        g.remove_vertex(int(alive[rng.integers(len(alive))]))
        for v in g.alive_ids():
            assert g.live_degree[v] == len(g.neighbors(int(v)))


def test_copy_is_independent(t1):
    c = t1.copy()
    c.remove_vertex(0)
    assert t1.alive[0]
    assert not c.alive[0]
    assert t1.alive_counts() == (3, 3)
