import numpy as np
import pytest

from conftest import reference_greedy, reference_parallel
from greedymis.generators import (
    GeneratorSpec,
    cycle_graph,
    generate,
    path_graph,
    star_graph,
)
from greedymis.graphs import Graph, induced_subgraph, sample_labelling
from greedymis.greedy import (
    PathCountOverflowError,
    check_greedy_result,
    count_paths_from,
    longest_decreasing_path_from,
    past_set,
    run_greedy,
    run_parallel,
)


def random_spec(rng) -> GeneratorSpec:
    family = ["path", "cycle", "star", "gnp", "uniform_tree",
              "functional_mapping", "regular"][int(rng.integers(7))]
    n = int(rng.integers(3, 120))
    if family == "gnp":
        return GeneratorSpec(family, n, lam=float(rng.uniform(0.5, 4.0)))
    if family == "regular":
        d = int(rng.integers(1, min(n - 1, 5)))
        if d * n % 2:
            n += 1
        return GeneratorSpec(family, n, d=d)
    return GeneratorSpec(family, n)


class TestRunGreedy:
    def test_star_center_first(self):
        g = star_graph(5)
        labels = np.array([0.05, 0.3, 0.5, 0.7, 0.9])
        res = run_greedy(g, labels)
        assert res.mis_size == 1 and res.occupied[0]

    def test_p3_example(self):
        res = run_greedy(path_graph(3), np.array([0.1, 0.5, 0.2]))
        assert list(res.occupied) == [True, False, True]
        assert res.mis_size == 2

    def test_edgeless_all_occupied(self, rng):
        g = Graph.from_edges(7, [])
        res = run_greedy(g, sample_labelling(7, rng))
        assert res.mis_size == 7

    def test_label_count_mismatch(self):
        with pytest.raises(ValueError):
            run_greedy(path_graph(3), np.array([0.1, 0.2]))

    def test_matches_reference_and_invariants(self, rng):
        for _ in range(200):
            g = generate(random_spec(rng), rng)
            labels = sample_labelling(g.n, rng)
            res = run_greedy(g, labels)
            check_greedy_result(g, res)
            assert list(res.occupied) == reference_greedy(g.adjacency_lists(), labels)

    def test_rank_labels_give_identical_output(self, rng):
        # the permutation formulation: only the order matters
        for _ in range(50):
            g = generate(random_spec(rng), rng)
            labels = sample_labelling(g.n, rng)
            ranks = np.empty(g.n)
            ranks[np.argsort(labels)] = np.arange(g.n)
            assert np.array_equal(run_greedy(g, labels).occupied,
                                  run_greedy(g, ranks / max(g.n, 1)).occupied)


class TestRunParallel:
    def test_p3_one_round(self):
        res = run_parallel(path_graph(3), np.array([0.1, 0.5, 0.2]))
        assert list(res.occupied) == [True, False, True]
        assert res.rounds == 1

    def test_empty_graph_zero_rounds(self):
        res = run_parallel(Graph.from_edges(0, []), np.array([]))
        assert res.rounds == 0 and res.mis_size == 0

    def test_single_vertex_one_round(self):
        res = run_parallel(Graph.from_edges(1, []), np.array([0.5]))
        assert res.rounds == 1 and res.mis_size == 1

    def test_monotone_path_rounds_against_reference(self):
        # simulation oracle for n <= 20; the pattern is ceil(n/2)
        for n in range(1, 21):
            labels = np.arange(n) / n
            res = run_parallel(path_graph(n), labels)
            _, ref_rounds = reference_parallel(path_graph(n).adjacency_lists(), labels)
            assert res.rounds == ref_rounds == (n + 1) // 2

    def test_matches_reference(self, rng):
        for _ in range(150):
            g = generate(random_spec(rng), rng)
            labels = sample_labelling(g.n, rng)
            res = run_parallel(g, labels)
            ref_occ, ref_rounds = reference_parallel(g.adjacency_lists(), labels)
            assert list(res.occupied) == ref_occ
            assert res.rounds == ref_rounds

    def test_equals_sequential(self, rng):
        for _ in range(200):
            g = generate(random_spec(rng), rng)
            labels = sample_labelling(g.n, rng)
            assert np.array_equal(run_parallel(g, labels).occupied,
                                  run_greedy(g, labels).occupied)


class TestPastSet:
    def test_global_minimum_is_singleton(self, rng):
        g = generate(GeneratorSpec("gnp", 60, lam=3.0), rng)
        labels = sample_labelling(g.n, rng)
        v = int(np.argmin(labels))
        assert past_set(g, labels, v) == {v}

    def test_p3_middle(self):
        assert past_set(path_graph(3), np.array([0.1, 0.5, 0.2]), 1) == {0, 1, 2}

    def test_isolated_vertex(self):
        g = Graph.from_edges(3, [(0, 1)])
        assert past_set(g, np.array([0.3, 0.2, 0.9]), 2) == {2}

    def test_occupancy_determined_by_past_subgraph(self, rng):
        # running greedy on the induced past subgraph reproduces occupancy
        for _ in range(100):
            g = generate(random_spec(rng), rng)
            labels = sample_labelling(g.n, rng)
            occ = run_greedy(g, labels).occupied
            v = int(rng.integers(g.n))
            past = sorted(past_set(g, labels, v))
            sub = induced_subgraph(g, past)
            sub_occ = run_greedy(sub, labels[past]).occupied
            assert sub_occ[past.index(v)] == occ[v]

    def test_occupancy_unchanged_resampling_beyond_closed_past(self, rng):
        # resampling labels outside past(v) union N(past(v)) cannot change
        # v's occupancy (the boundary labels certify the past is closed)
        for _ in range(100):
            g = generate(random_spec(rng), rng)
            labels = sample_labelling(g.n, rng)
            occ_v_before = run_greedy(g, labels).occupied
            v = int(rng.integers(g.n))
            past = past_set(g, labels, v)
            closed = set(past)
            for w in past:
                closed.update(int(u) for u in g.neighbors(w))
            outside = np.array([w for w in range(g.n) if w not in closed], dtype=int)
            labels2 = labels.copy()
            labels2[outside] = rng.random(outside.shape[0])
            assert run_greedy(g, labels2).occupied[v] == occ_v_before[v]


class TestLongestDecreasingPath:
    def test_global_minimum_zero(self, rng):
        g = generate(GeneratorSpec("gnp", 50, lam=2.0), rng)
        labels = sample_labelling(g.n, rng)
        v = int(np.argmin(labels))
        assert longest_decreasing_path_from(g, labels, v) == 0

    def test_monotone_path_from_max_end(self):
        n = 9
        labels = np.arange(n) / n
        assert longest_decreasing_path_from(path_graph(n), labels, n - 1) == n - 1

    def test_p3_middle(self):
        assert longest_decreasing_path_from(path_graph(3), np.array([0.1, 0.5, 0.2]), 1) == 1

    def test_matches_bruteforce_dfs(self, rng):
        def brute(adj, labels, v):
            best = 0
            for u in adj[v]:
                if labels[u] < labels[v]:
                    best = max(best, 1 + brute(adj, labels, u))
            return best

        for _ in range(40):
            g = generate(GeneratorSpec("gnp", 25, lam=2.5), rng)
            labels = sample_labelling(g.n, rng)
            adj = g.adjacency_lists()
            for v in range(g.n):
                assert longest_decreasing_path_from(g, labels, v) == brute(adj, labels, v)


class TestCountPaths:
    def test_isolated_vertex(self):
        g = Graph.from_edges(1, [])
        assert count_paths_from(g, 0, 5) == 0

    def test_p3_middle_r2(self):
        # two length-1 paths, both dead-end at r = 2
        assert count_paths_from(path_graph(3), 1, 2) == 2

    def test_c4_r2(self):
        # 2 length-1 + 2 length-2 paths
        assert count_paths_from(cycle_graph(4), 0, 2) == 4

    def test_r_zero(self):
        assert count_paths_from(cycle_graph(4), 0, 0) == 0

    def test_overflow_cap(self):
        g = Graph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
        with pytest.raises(PathCountOverflowError):
            count_paths_from(g, 0, 5, cap=10)

    def test_matches_walk_enumeration(self, rng):
        # independent oracle: enumerate self-avoiding walks recursively over
        # frozen sets
        def walks(adj, prefix, r):
            if r == 0:
                return 0
            total = 0
            for u in adj[prefix[-1]]:
                if u not in prefix:
                    total += 1 + walks(adj, prefix + (u,), r - 1)
            return total

        for _ in range(30):
            g = generate(GeneratorSpec("gnp", 14, lam=2.5), rng)
            adj = g.adjacency_lists()
            v = int(rng.integers(g.n))
            for r in range(4):
                assert count_paths_from(g, v, r) == walks(adj, (v,), r)
