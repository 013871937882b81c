import numpy as np
import pytest

from greedymis.generators import (
    GeneratorSpec,
    cycle_graph,
    generate,
    path_graph,
    star_graph,
)
from greedymis.graphs import (
    DisconnectedPairError,
    Graph,
    NotATreeError,
    canonical_code,
    components,
    distance,
    induced_subgraph,
    read_edge_list,
    sample_labelling,
    write_edge_list,
)


def relabel(g: Graph, perm) -> Graph:
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


class TestGraph:
    def test_from_edges_dedupes_and_sorts(self):
        g = Graph.from_edges(3, [(1, 0), (0, 1), (2, 1)])
        g.validate()
        assert g.m == 2
        assert list(g.neighbors(1)) == [0, 2]

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 5)])

    def test_generated_graphs_validate(self, rng):
        specs = [
            GeneratorSpec("path", 30),
            GeneratorSpec("cycle", 30),
            GeneratorSpec("star", 30),
            GeneratorSpec("gnp", 200, lam=3.0),
            GeneratorSpec("regular", 40, d=3),
            GeneratorSpec("uniform_tree", 60),
            GeneratorSpec("functional_mapping", 80),
            GeneratorSpec("functional_permutation", 80),
            GeneratorSpec("d_ary_truncated", 0, d=2, depth=4),
        ]
        for spec in specs:
            generate(spec, rng).validate()

    def test_immutable_arrays(self):
        g = path_graph(4)
        with pytest.raises(ValueError):
            g.indices[0] = 3

    def test_empty_graph(self):
        g = Graph.from_edges(0, [])
        g.validate()
        assert g.n == 0 and g.m == 0


class TestLabelling:
    def test_empty(self, rng):
        assert sample_labelling(0, rng).shape == (0,)

    def test_deterministic_given_seed(self):
        a = sample_labelling(3, np.random.default_rng(11))
        b = sample_labelling(3, np.random.default_rng(11))
        assert np.array_equal(a, b)

    def test_law_of_large_numbers(self):
        labels = sample_labelling(100_000, np.random.default_rng(0))
        assert abs(labels.mean() - 0.5) < 0.01

    def test_distinct(self, rng):
        labels = sample_labelling(50_000, rng)
        assert np.unique(labels).shape[0] == labels.shape[0]


class TestDistance:
    def test_path_endpoints(self):
        assert distance(path_graph(5), 0, 4) == 4

    def test_same_vertex(self):
        assert distance(path_graph(5), 2, 2) == 0

    def test_cycle_antipodal(self):
        assert distance(cycle_graph(6), 0, 3) == 3

    def test_disconnected_signalled(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(DisconnectedPairError):
            distance(g, 0, 3)

    def test_triangle_inequality_sampled(self, rng):
        g = generate(GeneratorSpec("gnp", 120, lam=4.0), rng)
        comps = components(g)
        comp = max(comps, key=len)
        for _ in range(60):
            u, v, w = rng.choice(comp, size=3)
            duv = distance(g, int(u), int(v))
            dvw = distance(g, int(v), int(w))
            duw = distance(g, int(u), int(w))
            assert duw <= duv + dvw


class TestCanonicalCode:
    def test_isomorphic_relabelling_of_path(self):
        p = path_graph(4)
        q = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])  # path 2-0-3-1
        assert canonical_code(p) == canonical_code(q)

    def test_path_vs_star_differ(self):
        assert canonical_code(path_graph(4)) != canonical_code(star_graph(4))

    def test_all_labelled_trees_on_four_vertices(self):
        # Cayley: 4^2 = 16 labelled trees; exactly 2 free trees on 4 vertices
        from itertools import product

        from greedymis.generators import prufer_decode

        codes = set()
        for seq in product(range(4), repeat=2):
            codes.add(canonical_code(prufer_decode(np.array(seq), 4)))
        assert len(codes) == 2

    def test_invariant_under_random_relabellings(self, rng):
        for n in (5, 8, 12):
            g = generate(GeneratorSpec("uniform_tree", n), rng)
            code = canonical_code(g)
            for _ in range(100):
                perm = rng.permutation(n)
                assert canonical_code(relabel(g, perm)) == code

    def test_rejects_non_tree(self):
        with pytest.raises(NotATreeError):
            canonical_code(cycle_graph(4))
        with pytest.raises(NotATreeError):
            canonical_code(Graph.from_edges(4, [(0, 1), (2, 3)]))


class TestEdgeList:
    def test_roundtrip(self, tmp_path, rng):
        g = generate(GeneratorSpec("gnp", 50, lam=2.0), rng)
        path = tmp_path / "g.edges"
        write_edge_list(g, path)
        h = read_edge_list(path)
        assert h.n == g.n and h.edges() == g.edges()

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.edges"
        path.write_text("3 2\n0 1\n")
        with pytest.raises(ValueError):
            read_edge_list(path)


def test_induced_subgraph():
    g = cycle_graph(5)
    sub = induced_subgraph(g, [0, 1, 2])
    assert sub.n == 3 and sub.edges() == [(0, 1), (1, 2)]
