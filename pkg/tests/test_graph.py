import itertools

import networkx as nx
import numpy as np
import pytest

from oracles import all_labeled_graphs, from_nx, to_nx
from pdthresh.errors import NotChordalError, NotConnectedError, PdThreshError
from pdthresh.graph import (
    CliqueOrdering,
    Decomposition,
    UndirectedGraph,
    bfs_tree_edges,
    broken_cycle_witness,
    chordality,
    connected_components,
    find_cycle,
    induced_subgraph,
    is_chordal,
    is_complete,
    is_connected,
    is_forest,
    is_perfect_elimination_order,
    is_tree,
    is_union_of_complete_components,
    maximum_cardinality_search,
    path_order,
    perfect_clique_ordering,
    removable_vertex,
)
from pdthresh.sampling import random_connected_graph

G = UndirectedGraph.from_edges
A3 = G(3, [(1, 2), (1, 3)])
TWO_TRIANGLES = G(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


def small_connected():
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() >= 1 and nx.is_connected(h):
            yield from_nx(h)


class TestConstruction:
    def test_edges_normalised(self):
        g = G(3, [(2, 1), (3, 2)])
        assert g.sorted_edges() == [(1, 2), (2, 3)]
        assert g.has_edge(2, 1) and not g.has_edge(1, 3)
        assert g.neighbors(2) == [1, 3]
        assert g.degree(2) == 2

    @pytest.mark.parametrize("edges", [[(1, 1)], [(0, 1)], [(1, 4)]])
    def test_bad_edges(self, edges):
        with pytest.raises(PdThreshError):
            G(3, edges)

    def test_zero_vertices(self):
        with pytest.raises(PdThreshError):
            UndirectedGraph.empty(0)

    def test_strict_duplicates(self):
        with pytest.raises(PdThreshError):
            G(3, [(1, 2), (2, 1)], strict=True)
        assert len(G(3, [(1, 2), (2, 1)]).edges) == 1

    def test_named_families(self):
        assert len(UndirectedGraph.complete(5).edges) == 10
        assert UndirectedGraph.cycle(4).sorted_edges() == [(1, 2), (1, 4), (2, 3), (3, 4)]
        assert UndirectedGraph.star(4).sorted_edges() == [(1, 2), (1, 3), (1, 4)]
        assert UndirectedGraph.path(3).sorted_edges() == [(1, 2), (2, 3)]

    def test_subgraph_relation(self):
        assert A3.is_subgraph_of(UndirectedGraph.complete(3))
        assert not UndirectedGraph.complete(3).is_subgraph_of(A3)
        assert not A3.is_subgraph_of(UndirectedGraph.complete(4))


class TestComponents:
    def test_examples(self):
        assert connected_components(UndirectedGraph.complete(3)) == [{1, 2, 3}]
        assert connected_components(G(3, [(1, 2)])) == [{1, 2}, {3}]
        assert connected_components(G(4, [(1, 2), (1, 3)])) == [{1, 2, 3}, {4}]

    def test_against_networkx(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n):
                ours = sorted(map(sorted, connected_components(g)))
                theirs = sorted(map(sorted, nx.connected_components(to_nx(g))))
                assert ours == theirs
                assert is_connected(g) == nx.is_connected(to_nx(g))


class TestCompleteness:
    def test_is_complete(self):
        assert is_complete(UndirectedGraph.complete(3), {1, 2, 3})
        assert not is_complete(A3, {1, 2, 3})
        assert is_complete(A3, {3})
        with pytest.raises(PdThreshError):
            is_complete(A3, {4})

    def test_union_of_complete(self):
        assert not is_union_of_complete_components(A3)
        assert is_union_of_complete_components(G(4, [(1, 2), (3, 4)]))
        k5 = UndirectedGraph.complete(5)
        assert not is_union_of_complete_components(G(5, k5.edges - {(2, 4)}))

    def test_union_exhaustive(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n):
                expect = all(is_complete(g, c) for c in connected_components(g))
                assert is_union_of_complete_components(g) == expect


class TestInducedAndTrees:
    def test_induced(self):
        h, mp = induced_subgraph(UndirectedGraph.complete(3), {1, 2})
        assert h == UndirectedGraph.complete(2) and mp == {1: 1, 2: 2}
        h, _ = induced_subgraph(A3, {2, 3})
        assert h.edges == frozenset()
        h, mp = induced_subgraph(UndirectedGraph.cycle(4), {1, 2, 3})
        assert h == UndirectedGraph.path(3)
        h, mp = induced_subgraph(UndirectedGraph.cycle(4), {2, 4, 3})
        assert mp == {2: 1, 3: 2, 4: 3} and h.sorted_edges() == [(1, 2), (2, 3)]
        with pytest.raises(PdThreshError):
            induced_subgraph(A3, set())

    def test_tree_forest(self):
        assert is_tree(UndirectedGraph.path(3))
        c3 = UndirectedGraph.cycle(3)
        assert not is_tree(c3) and not is_forest(c3)
        f = G(5, [(1, 2), (3, 4)])
        assert is_forest(f) and not is_tree(f)

    def test_tree_forest_networkx(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n):
                h = to_nx(g)
                assert is_tree(g) == nx.is_tree(h)
                assert is_forest(g) == nx.is_forest(h)

    def test_path_order(self):
        assert path_order(G(3, [(1, 2), (1, 3)])) == [2, 1, 3]
        assert path_order(UndirectedGraph.path(4)) == [1, 2, 3, 4]
        assert path_order(UndirectedGraph.star(4)) is None
        assert path_order(UndirectedGraph.cycle(4)) is None
        assert path_order(G(4, [(1, 2), (3, 4)])) is None


def _has_long_induced_cycle(h: nx.Graph) -> bool:
    for k in range(4, h.number_of_nodes() + 1):
        for nodes in itertools.combinations(h.nodes(), k):
            sub = h.subgraph(nodes)
            if sub.number_of_edges() == k and all(d == 2 for _, d in sub.degree()) and nx.is_connected(sub):
                return True
    return False


class TestChordality:
    def test_examples(self):
        assert chordality(UndirectedGraph.star(5)) is not None
        assert chordality(UndirectedGraph.cycle(4)) is None
        assert chordality(G(4, list(UndirectedGraph.cycle(4).edges) + [(1, 3)])) is not None

    def test_mcs_is_deterministic(self):
        assert maximum_cardinality_search(UndirectedGraph.path(4)) == maximum_cardinality_search(
            UndirectedGraph.path(4)
        )

    def test_exhaustive_up_to_seven(self):
        for h in nx.graph_atlas_g()[1:]:
            g = from_nx(h)
            peo = chordality(g)
            assert (peo is not None) == (not _has_long_induced_cycle(h)) == nx.is_chordal(h)
            if peo is not None:
                assert is_perfect_elimination_order(g, peo)
                assert sorted(peo) == list(g.vertices)


class TestCliqueOrdering:
    def test_examples(self):
        co = perfect_clique_ordering(UndirectedGraph.path(3))
        assert [set(c) for c in co.cliques] == [{1, 2}, {2, 3}]
        assert co.separators[1] == {2}
        assert [set(c) for c in perfect_clique_ordering(UndirectedGraph.complete(4)).cliques] == [{1, 2, 3, 4}]
        co = perfect_clique_ordering(TWO_TRIANGLES)
        assert [set(c) for c in co.cliques] == [{1, 2, 3}, {2, 3, 4}]
        assert co.separators[1] == {2, 3} and co.residual_a[1] == {1} and co.residual_b[1] == {4}
        assert co.histories[1] == {1, 2, 3, 4}

    def test_errors(self):
        with pytest.raises(NotChordalError):
            perfect_clique_ordering(UndirectedGraph.cycle(5))
        with pytest.raises(NotConnectedError):
            perfect_clique_ordering(G(4, [(1, 2), (3, 4)]))

    def test_running_intersection_and_maximality(self):
        for h in nx.graph_atlas_g()[1:]:
            if not (nx.is_connected(h) and nx.is_chordal(h)):
                continue
            g = from_nx(h)
            co = perfect_clique_ordering(g)
            assert co.has_running_intersection()
            theirs = {frozenset(c) for c in nx.find_cliques(to_nx(g))}
            assert set(co.cliques) == theirs
            for q in range(1, len(co)):
                assert co.residual_a[q] | co.separators[q] == co.histories[q - 1]
                assert co.residual_b[q] | co.separators[q] == co.cliques[q]

    def test_running_intersection_detects_bad_order(self):
        bad = CliqueOrdering.from_cliques([{1, 2}, {3, 4}, {2, 3}])
        assert not bad.has_running_intersection()


class TestRemovableVertex:
    def test_examples(self):
        assert removable_vertex(UndirectedGraph.path(3)) == 3
        assert removable_vertex(UndirectedGraph.star(5)) == 2
        assert removable_vertex(UndirectedGraph.complete(3)) == 2
        with pytest.raises(NotConnectedError):
            removable_vertex(G(3, [(1, 2)]))

    def test_removal_keeps_connected(self):
        rng = np.random.default_rng(7)
        graphs = [g for g in small_connected() if g.n >= 2]
        graphs += [random_connected_graph(int(rng.integers(2, 31)), rng, p=rng.uniform(0.0, 0.3)) for _ in range(1000)]
        for g in graphs:
            v = removable_vertex(g)
            rest, _ = induced_subgraph(g, set(g.vertices) - {v})
            assert is_connected(rest)


def _components_induced(g, h):
    for comp in connected_components(h):
        sub_g, _ = induced_subgraph(g, comp)
        sub_h, _ = induced_subgraph(h, comp)
        if sub_g != sub_h:
            return False
    return True


class TestBrokenCycle:
    def test_examples(self):
        assert broken_cycle_witness(UndirectedGraph.cycle(3), UndirectedGraph.path(3)) == [1, 2, 3]
        k4 = UndirectedGraph.complete(4)
        assert broken_cycle_witness(k4, k4) is None
        cyc = broken_cycle_witness(k4, UndirectedGraph.path(4))
        assert len(cyc) >= 3 and (min(cyc[0], cyc[-1]), max(cyc[0], cyc[-1])) in k4.edges - UndirectedGraph.path(4).edges

    def _check(self, g, h):
        cyc = broken_cycle_witness(g, h)
        assert (cyc is None) == _components_induced(g, h)
        if cyc is not None:
            assert len(cyc) >= 3 and len(set(cyc)) == len(cyc)
            assert all(h.has_edge(u, v) for u, v in zip(cyc, cyc[1:]))
            assert g.has_edge(cyc[0], cyc[-1]) and not h.has_edge(cyc[0], cyc[-1])

    def test_definition_exhaustive_small(self):
        for n in range(1, 5):
            for g in all_labeled_graphs(n):
                edges = sorted(g.edges)
                for mask in range(1 << len(edges)):
                    h = UndirectedGraph(n, frozenset(e for i, e in enumerate(edges) if mask >> i & 1))
                    self._check(g, h)

    def test_definition_random_six(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            g = G(6, [e for e in itertools.combinations(range(1, 7), 2) if rng.random() < 0.6])
            h = UndirectedGraph(6, frozenset(e for e in g.edges if rng.random() < 0.6))
            self._check(g, h)

    def test_not_subgraph(self):
        with pytest.raises(PdThreshError):
            broken_cycle_witness(A3, UndirectedGraph.complete(3))


def test_find_cycle():
    assert find_cycle(UndirectedGraph.path(5)) is None
    for h in nx.graph_atlas_g()[1:300]:
        g = from_nx(h)
        cyc = find_cycle(g)
        assert (cyc is None) == nx.is_forest(h)
        if cyc:
            assert len(set(cyc)) == len(cyc) >= 3
            assert all(g.has_edge(u, v) for u, v in zip(cyc, cyc[1:] + cyc[:1]))


def test_bfs_tree_edges():
    assert bfs_tree_edges(UndirectedGraph.path(3), 1) == [(1, 2), (2, 3)]
    assert bfs_tree_edges(UndirectedGraph.star(4), 1) == [(1, 2), (1, 3), (1, 4)]
    binary = G(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
    assert bfs_tree_edges(binary, 1) == [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]
    assert bfs_tree_edges(UndirectedGraph.path(3), 2) == [(2, 1), (2, 3)]


def test_decomposition():
    d = Decomposition({2}, {3}, {1})
    assert d.is_valid_for(A3)
    assert not Decomposition({2}, {3}, {1}).is_valid_for(UndirectedGraph.complete(3))
    assert not Decomposition({2}, {1}, {3}).is_valid_for(A3)
