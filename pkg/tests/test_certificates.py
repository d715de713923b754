import numpy as np
import pytest

from oracles import all_labeled_graphs, frac_is_pd, min_eig
from pdthresh.certificates import (
    ALL_SUBGRAPHS,
    GUARANTEED,
    LEVEL,
    NOT_GUARANTEED,
    UNIVERSAL,
    certify_all_subgraph_preservation,
    certify_level_preservation,
    certify_subgraph_preservation,
    certify_universal_preservation,
    dd_guarantee,
)
from pdthresh.counterexamples import A3_MATRIX
from pdthresh.errors import NotASubgraphError, TooSmallError
from pdthresh.graph import UndirectedGraph, connected_components, is_complete
from pdthresh.thresholding import is_in_pattern_cone, threshold_at_level, threshold_by_graph

G = UndirectedGraph.from_edges
A3 = G(3, [(1, 2), (1, 3)])


def assert_witness(cert, base=None):
    assert cert.verdict == NOT_GUARANTEED and not cert.guaranteed
    assert cert.witness_report.is_pd and not cert.thresholded_report.is_pd
    assert frac_is_pd(cert.witness) and not frac_is_pd(cert.witness_thresholded)
    if base is not None:
        assert is_in_pattern_cone(cert.witness, base)


class TestUniversal:
    def test_two_triangles(self):
        g = G(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
        cert = certify_universal_preservation(g)
        assert cert.verdict == GUARANTEED and cert.theorem == UNIVERSAL
        assert cert.structure == [[1, 2, 3], [4, 5, 6]]
        assert all(is_complete(g, c) for c in cert.structure)

    def test_a3_gives_integer_example(self):
        cert = certify_universal_preservation(A3)
        np.testing.assert_array_equal(cert.witness, A3_MATRIX)
        assert_witness(cert)
        assert cert.witness_report.mode == "exact-rational"

    def test_c4(self):
        cert = certify_universal_preservation(UndirectedGraph.cycle(4))
        assert_witness(cert)
        assert min_eig(cert.witness) > 0 and min_eig(cert.witness_thresholded) < 0

    def test_soundness_positive(self):
        rng = np.random.default_rng(31)
        for g in (G(8, [(1, 2), (3, 4), (3, 5), (4, 5)]), UndirectedGraph.complete(8), UndirectedGraph.empty(7)):
            assert certify_universal_preservation(g).guaranteed
            for _ in range(500):
                f = rng.standard_normal((g.n, g.n))
                a = f @ f.T + 1e-6 * np.eye(g.n)
                assert min_eig(threshold_by_graph(a, g)) > 0

    def test_to_dict(self):
        d = certify_universal_preservation(A3).to_dict("w.txt")
        assert d["verdict"] == NOT_GUARANTEED and d["witness_path"] == "w.txt"
        assert d["witness_pd"] is True and d["thresholded_pd"] is False
        assert d["thresholded_by"] == [[1, 2], [1, 3]]


class TestSubgraph:
    def test_examples(self):
        g = UndirectedGraph.cycle(5)
        assert certify_subgraph_preservation(g, g).guaranteed
        c = certify_subgraph_preservation(UndirectedGraph.cycle(3), UndirectedGraph.path(3))
        assert_witness(c, UndirectedGraph.cycle(3))
        c = certify_subgraph_preservation(UndirectedGraph.cycle(4), UndirectedGraph.path(4))
        assert_witness(c, UndirectedGraph.cycle(4))

    def test_not_subgraph(self):
        with pytest.raises(NotASubgraphError):
            certify_subgraph_preservation(A3, UndirectedGraph.complete(3))

    def test_complete_base_matches_universal(self):
        for n in range(1, 6):
            k = UndirectedGraph.complete(n)
            for h in all_labeled_graphs(n):
                assert certify_subgraph_preservation(k, h).verdict == certify_universal_preservation(h).verdict

    def test_guaranteed_side_random(self):
        # induced components: thresholding a P_G matrix stays PD
        rng = np.random.default_rng(32)
        g = G(6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)])
        h = G(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        assert certify_subgraph_preservation(g, h).guaranteed
        for _ in range(300):
            m = np.zeros((6, 6))
            for u, v in g.edges:
                m[u - 1, v - 1] = m[v - 1, u - 1] = rng.uniform(-3, 3)
            m += (rng.uniform(0.01, 1) - np.linalg.eigvalsh(m)[0]) * np.eye(6)
            assert min_eig(threshold_by_graph(m, h)) > 0


class TestAllSubgraphs:
    def test_examples(self):
        f = G(7, [(1, 2), (2, 3), (2, 4), (5, 6)])
        assert certify_all_subgraph_preservation(f).guaranteed
        for g in (UndirectedGraph.cycle(3), UndirectedGraph.complete(4)):
            cert = certify_all_subgraph_preservation(g)
            assert cert.theorem == ALL_SUBGRAPHS
            assert_witness(cert, g)
            assert cert.thresholded_by.is_subgraph_of(g)


class TestLevel:
    def test_path(self):
        cert = certify_level_preservation(UndirectedGraph.path(5), 0.3)
        assert cert.guaranteed and cert.theorem == LEVEL and cert.structure == [[1, 2, 3, 4, 5]]

    @pytest.mark.parametrize("g,eta", [(UndirectedGraph.cycle(3), 0.95), (UndirectedGraph.cycle(6), 0.5),
                                       (UndirectedGraph.complete(5), 2.0)])
    def test_witness(self, g, eta):
        cert = certify_level_preservation(g, eta)
        assert_witness(cert, g)
        np.testing.assert_array_equal(cert.witness_thresholded, threshold_at_level(cert.witness, eta))

    def test_disconnected_noted(self):
        cert = certify_level_preservation(G(5, [(1, 2), (3, 4), (4, 5)]))
        assert cert.guaranteed and cert.notes
        cert = certify_level_preservation(G(6, [(1, 2), (4, 5), (5, 6), (4, 6)]))
        assert not cert.guaranteed and cert.notes
        assert_witness(cert)

    def test_too_small(self):
        with pytest.raises(TooSmallError):
            certify_level_preservation(UndirectedGraph.path(2))


class TestDD:
    def test_examples(self):
        assert dd_guarantee([[2, 1], [1, 2]])
        assert not dd_guarantee([[3, -2, -2], [-2, 3, 2], [-2, 2, 3]])
        assert dd_guarantee(np.eye(4))
        assert not dd_guarantee([[-2, 1], [1, -2]])

    def test_every_threshold_stays_pd(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            n = int(rng.integers(2, 9))
            x = rng.uniform(-1, 1, (n, n))
            x = (x + x.T) / 2
            np.fill_diagonal(x, 0)
            np.fill_diagonal(x, np.abs(x).sum(axis=1) + 0.01)
            assert dd_guarantee(x)
            for _ in range(200):
                g = G(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5])
                assert min_eig(threshold_by_graph(x, g)) > 0
