import numpy as np
import pytest

from mbbp import (Biclique, BipartiteGraph, SearchState, TabuParams,
                  UnbalanceVariant, balance_deviation, build_candidates, delta,
                  is_biclique, push, repair, tabu_improve, tabu_tenure)
from mbbp.solver import random_init_solution
from mbbp.tabu_search import _step

import oracle


def make_state(g, xs, ys, variant=UnbalanceVariant.BOUND_2, alpha=0.3):
    return SearchState(g, Biclique.of(xs, ys), TabuParams(L=10, alpha=alpha), variant)


def test_params_validation():
    with pytest.raises(ValueError):
        TabuParams(L=0)
    with pytest.raises(ValueError):
        TabuParams(alpha=-0.1)


def test_variant_bounds():
    assert UnbalanceVariant.BOUND_2.deviation_bound == 2
    assert UnbalanceVariant.BOUND_1.deviation_bound == 1
    assert UnbalanceVariant.UNBOUNDED.deviation_bound == np.inf
    assert UnbalanceVariant.from_str("inf") is UnbalanceVariant.UNBOUNDED
    with pytest.raises(ValueError):
        UnbalanceVariant.from_str("3")


def test_delta_t1_plateau_case(t1):
    st = make_state(t1, [0, 1], [3, 4])
    assert delta(st, 2) == 0


def test_delta_t1_expand_case(t1):
    st = make_state(t1, [0, 1], [3])
    assert delta(st, 5) == 1


def test_delta_larger_x_fully_adjacent(t1):
    # |X| > |Y| and v adjacent to all of Y: no expulsion, delta 0
    st = make_state(t1, [0, 1], [3])
    assert delta(st, 2) == 0


def test_delta_rejects_solution_member(t1):
    st = make_state(t1, [0, 1], [3, 4])
    with pytest.raises(ValueError):
        delta(st, 0)


def test_delta_matches_true_change_sampled():
    hits = 0
    for seed in range(12):
        g = oracle.corpus_graph(12, 12, 0.4, 1200 + seed)
        rng = np.random.default_rng(seed)
        start = random_init_solution(g, rng)
        st = SearchState(g, start, TabuParams(L=30, alpha=0.3),
                         UnbalanceVariant.BOUND_2)
        for _ in range(30):
            frontier = sorted(st.frontier())
            for v in frontier:
                want = oracle.push_delta(g, st.x_list, st.y_list, v)
                assert delta(st, v) == want
                hits += 1
            _step(st, rng)
    assert hits > 1000


def test_push_expels_non_neighbor(t1):
    st = make_state(t1, [0, 1], [3, 4, 5])
    expelled = push(st, 2)
    assert expelled == [5]
    assert sorted(st.x_list) == [0, 1, 2]
    assert sorted(st.y_list) == [3, 4]


def test_push_no_expulsion(t1):
    st = make_state(t1, [0], [3])
    assert push(st, 1) == []
    assert sorted(st.x_list) == [0, 1]


def test_push_can_expel_many_outside_candidate_set():
    g = BipartiteGraph(2, 3, [(0, 0), (0, 1), (0, 2), (1, 0)])
    st = make_state(g, [0], [2, 3, 4])
    expelled = push(st, 1)
    assert sorted(expelled) == [3, 4]
    assert sorted(st.y_list) == [2]


def test_push_rejects_member_and_nonfrontier(t1):
    st = make_state(t1, [0], [3])
    with pytest.raises(ValueError):
        push(st, 0)
    g = BipartiteGraph(2, 2, [(0, 0)])
    st2 = make_state(g, [0], [2])
    with pytest.raises(ValueError):
        push(st2, 1)  # isolated from the solution


def test_push_keeps_biclique_and_counters():
    g = oracle.corpus_graph(10, 10, 0.5, 42)
    rng = np.random.default_rng(3)
    st = SearchState(g, random_init_solution(g, rng), TabuParams(L=5, alpha=0.3),
                     UnbalanceVariant.BOUND_2)
    for _ in range(60):
        _step(st, rng)
        assert is_biclique(g, st.solution)
        assert balance_deviation(st.solution) <= 2
        conn = np.zeros(g.n, dtype=np.int64)
        for v in st.x_list + st.y_list:
            conn[st.view.nbrs(v)] += 1
        assert np.array_equal(conn, st.conn)
        members = sorted(st.x_list + st.y_list)
        assert members == sorted(int(v) for v in np.flatnonzero(st.in_solution))


def test_candidates_t1_plateau_pair(t1):
    st = make_state(t1, [0, 1], [3, 4])
    expand, plateau, escape = build_candidates(st)
    assert list(expand) == []
    assert sorted(plateau) == [2, 5]
    assert list(escape) == []


def test_candidates_match_oracle_classification():
    for seed in range(10):
        g = oracle.corpus_graph(9, 11, 0.45, 3300 + seed)
        rng = np.random.default_rng(seed)
        st = SearchState(g, random_init_solution(g, rng),
                         TabuParams(L=40, alpha=1.0), UnbalanceVariant.BOUND_2)
        for _ in range(40):
            expand, plateau, escape = build_candidates(st)
            want = oracle.candidate_sets(g, st.x_list, st.y_list, st.tabu,
                                         st.iteration, st.best_size)
            assert (sorted(expand), sorted(plateau), sorted(escape)) == want
            _step(st, rng)


def test_candidates_all_tabu_empty(t1):
    st = make_state(t1, [0, 1], [3, 4])
    st.tabu[:] = 10 ** 9
    st.best_size = 5  # no aspiration
    expand, plateau, escape = build_candidates(st)
    assert len(expand) == len(plateau) == len(escape) == 0


def test_candidates_aspiration_overrides_tabu(k33):
    st = make_state(k33, [0], [3, 4])
    st.tabu[:] = 10 ** 9
    # best_size equals current min, so an expanding move beats it: tabu waived
    assert st.best_size == 1
    expand, plateau, escape = build_candidates(st)
    assert sorted(expand) == [1, 2]
    # plateau has no aspiration rule: the tabu filter stands
    assert len(plateau) == 0 and len(escape) == 0


def test_tenure_floor_cases():
    rng = np.random.default_rng(0)
    assert tabu_tenure(0.0, 10, rng) == 7
    assert tabu_tenure(1.74, 0, rng) == 7


def test_tenure_distribution():
    rng = np.random.default_rng(1)
    draws = [tabu_tenure(0.30, 100, rng) for _ in range(10 ** 4)]
    assert min(draws) == 7
    assert max(draws) == 30
    # values 24..30 arise from r in [80, 100]: about a fifth of draws
    tail = sum(1 for d in draws if d >= 24) / len(draws)
    assert 0.15 < tail < 0.27


def test_repair_drops_to_equality():
    g = BipartiteGraph(4, 1, [(u, 0) for u in range(4)])
    st = make_state(g, [0, 1, 2, 3], [4])
    rng = np.random.default_rng(2)
    repair(st, rng)
    assert len(st.x_list) == len(st.y_list) == 1
    assert st.y_list == [4]
    dropped = set(range(4)) - set(st.x_list)
    assert all(st.tabu[u] >= 7 for u in dropped)


def test_repair_not_triggered_at_bound(t1):
    st = make_state(t1, [0, 1, 2], [3])  # deviation 2 under bound 2
    with pytest.raises(ValueError):
        repair(st, np.random.default_rng(0))


def test_repair_triggered_at_two_under_bound_one(t1):
    st = make_state(t1, [0, 1, 2], [3], variant=UnbalanceVariant.BOUND_1)
    repair(st, np.random.default_rng(0))
    assert len(st.x_list) == len(st.y_list) == 1


def test_improve_t1_reaches_optimum(t1):
    best = tabu_improve(t1, Biclique.of([0], [3]), TabuParams(L=1000, alpha=0.3),
                        UnbalanceVariant.BOUND_2, np.random.default_rng(0))
    assert min(len(best.x), len(best.y)) == 2
    assert is_biclique(t1, best)


def test_improve_k33_reaches_three(k33):
    best = tabu_improve(k33, Biclique.of([0], [3]), TabuParams(L=6, alpha=0.3),
                        UnbalanceVariant.BOUND_2, np.random.default_rng(5))
    assert min(len(best.x), len(best.y)) == 3


def test_improve_never_below_start(t1):
    start = Biclique.of([0, 1], [3, 4])
    best = tabu_improve(t1, start, TabuParams(L=1, alpha=0.3),
                        UnbalanceVariant.BOUND_2, np.random.default_rng(7))
    assert min(len(best.x), len(best.y)) >= 2


def test_improve_deviation_capped(t1):
    for variant, cap in [(UnbalanceVariant.BOUND_2, 2),
                         (UnbalanceVariant.BOUND_1, 1)]:
        best = tabu_improve(t1, Biclique.of([0], [3]),
                            TabuParams(L=50, alpha=0.3), variant,
                            np.random.default_rng(9))
        assert balance_deviation(best) <= max(cap, 1)


def test_improve_deterministic_per_seed():
    g = oracle.corpus_graph(15, 15, 0.4, 88)
    start = Biclique.of([0], [int(g.neighbors(0)[0])])
    runs = []
    for _ in range(2):
        best = tabu_improve(g, start, TabuParams(L=200, alpha=0.3),
                            UnbalanceVariant.BOUND_2, np.random.default_rng(123))
        runs.append((tuple(sorted(best.x)), tuple(sorted(best.y))))
    assert runs[0] == runs[1]


def test_iteration_counter_advances_without_moves():
    # two isolated vertices in the solution: no frontier, every step a no-op
    g = BipartiteGraph(1, 1, [(0, 0)])
    st = make_state(g, [0], [1])
    rng = np.random.default_rng(0)
    for _ in range(5):
        _step(st, rng)
    assert st.iteration == 5
    assert st.best_size == 1


def test_escape_used_when_stuck():
    """A balanced maximal biclique admits only deviation-increasing swaps."""
    # two overlapping K2,2 blocks sharing no full extension
    g = BipartiteGraph(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1),
                              (2, 2), (2, 3), (3, 2), (3, 3), (1, 2)])
    st = make_state(g, [0, 1], [4, 5])
    expand, plateau, escape = build_candidates(st)
    assert len(expand) == 0 and len(plateau) == 0
    assert sorted(escape) == [6]  # v3 adjacent to u2 only: a -1 swap
    rng = np.random.default_rng(0)
    _step(st, rng)
    assert st.iteration == 1
    assert 6 in st.y_list
