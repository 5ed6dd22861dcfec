"""
Tests for regular graphs, cuts, the graph text format and the normalized Laplacian spectrum.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from sparsecut.errors import GraphParseError, InvalidArgumentError, ResourceLimitError
from sparsecut.graph import (
    Graph,
    check_fact_lambda,
    cluster_graph,
    complete,
    cut_edges,
    cycle,
    disjoint_union,
    expansion,
    format_graph,
    laplacian_spectrum,
    make_cut,
    parse_graph,
    planted_blocks,
    random_regular,
    rayleigh,
    read_graph,
    spectral_sweep,
    threshold_rank,
    write_graph,
)

C4_TEXT = "4 2 4\n0 1\n1 2\n2 3\n3 0\n"


class TestGraph:
    """Construction and validation of r-regular graphs."""

    def test_cycle_shape(self, c8):
        """Test that C8 has 8 vertices, degree 2 and 8 edges stored once each."""
        assert (c8.n, c8.r, c8.m) == (8, 2, 8)
        assert all(u < v for u, v in c8.edges)
        assert list(c8.edges) == sorted(c8.edges)

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Graph(n=2, r=1, edges=((0, 0),))

    def test_parallel_edge_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Graph(n=2, r=2, edges=((0, 1), (1, 0)))

    def test_irregular_graph_rejected(self):
        """Test that a path is rejected with the offending vertex in the diagnostics."""
        with pytest.raises(InvalidArgumentError) as exc_info:
            Graph(n=3, r=2, edges=((0, 1), (1, 2)))
        assert exc_info.value.diagnostics["vertex"] == 0

    def test_too_small(self):
        with pytest.raises(InvalidArgumentError):
            Graph(n=1, r=1, edges=())

    def test_from_edges_infers_degree(self):
        G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert G.r == 2

    def test_laplacian_quadratic_form(self, c8):
        """Test that f^T L f is the edge sum of squared differences."""
        f = np.arange(8, dtype=float)
        expected = sum((f[u] - f[v]) ** 2 for u, v in c8.edges)
        assert f @ c8.laplacian @ f == pytest.approx(expected)


class TestExpansion:
    """Exact expansion and cut construction."""

    def test_arc_of_cycle(self, c8):
        assert cut_edges(c8, {0, 1, 2, 3}) == 2
        assert expansion(c8, {0, 1, 2, 3}) == Fraction(1, 4)

    def test_singleton(self, k5):
        assert expansion(k5, {2}) == Fraction(1)

    def test_empty_and_full_sets_rejected(self, c8):
        with pytest.raises(InvalidArgumentError):
            expansion(c8, [])
        with pytest.raises(InvalidArgumentError):
            expansion(c8, range(8))

    def test_vertex_out_of_range(self, c8):
        with pytest.raises(InvalidArgumentError):
            expansion(c8, {8})

    def test_make_cut_reports_smaller_side(self, c8):
        cut = make_cut(c8, {0, 1, 2, 3, 4, 5}, method="test")
        assert cut.S == frozenset({6, 7})
        assert cut.expansion == Fraction(1, 2)
        assert cut.method == "test"

    def test_make_cut_equal_halves_lexicographic(self, c8):
        """Test that equal halves resolve to the lexicographically smaller vertex list."""
        assert make_cut(c8, {4, 5, 6, 7}).S == frozenset({0, 1, 2, 3})

    def test_cut_to_dict(self, c8):
        data = make_cut(c8, {0, 1, 2, 3}, method="m", seed=3).to_dict()
        assert data["S"] == [0, 1, 2, 3]
        assert data["expansion_exact"] == "1/4"
        assert data["expansion"] == 0.25
        assert data["seed"] == 3

    def test_rayleigh_of_indicator_is_expansion(self, c8):
        assert rayleigh(c8, c8.indicator({0, 1, 2, 3})) == pytest.approx(0.25)

    def test_rayleigh_of_zero_function(self, c8):
        with pytest.raises(InvalidArgumentError):
            rayleigh(c8, np.zeros(8))


class TestGenerators:
    """Generated families used by the CLI and the acceptance runs."""

    def test_complete(self, k5):
        assert (k5.n, k5.r, k5.m) == (5, 4, 10)

    def test_disjoint_union(self, two_k4):
        assert (two_k4.n, two_k4.r, two_k4.m) == (8, 3, 12)
        assert expansion(two_k4, range(4)) == 0

    def test_disjoint_union_degree_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            disjoint_union(complete(4), cycle(4))

    def test_cluster_graph_planted_blocks(self):
        """Test that every planted block of a cluster graph has 2 * bridges boundary edges."""
        G = cluster_graph(4, 5, 1)
        assert (G.n, G.r) == (20, 4)
        for block in planted_blocks(4, 5):
            assert cut_edges(G, block) == 2
            assert expansion(G, block) == Fraction(1, 10)

    def test_cluster_graph_arguments(self):
        with pytest.raises(InvalidArgumentError):
            cluster_graph(1, 5)
        with pytest.raises(InvalidArgumentError):
            cluster_graph(2, 4, bridges=3)

    def test_random_regular(self):
        G = random_regular(10, 3, seed=1)
        assert (G.n, G.r, G.m) == (10, 3, 15)
        assert random_regular(10, 3, seed=1) == G

    def test_random_regular_impossible(self):
        with pytest.raises(InvalidArgumentError):
            random_regular(5, 3, seed=0)


class TestGraphFormat:
    """The 'n r m' text format."""

    def test_parse(self):
        G = parse_graph(C4_TEXT)
        assert G == cycle(4)

    def test_comments_and_blank_lines(self):
        G = parse_graph("# a square\n\n4 2 4\n0 1  # first\n1 2\n\n2 3\n3 0\n")
        assert G.m == 4

    def test_header_inconsistent(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph("4 2 3\n0 1\n1 2\n2 3\n")
        assert exc_info.value.line == 1

    def test_parallel_edge_line_number(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph("4 2 4\n0 1\n1 0\n2 3\n3 2\n")
        assert exc_info.value.line == 3
        assert "line 3" in str(exc_info.value)

    def test_out_of_range_vertex(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph("4 2 4\n0 1\n1 2\n2 3\n3 4\n")
        assert exc_info.value.line == 5

    def test_non_integer_token(self):
        with pytest.raises(GraphParseError):
            parse_graph("4 2 4\n0 1\n1 x\n2 3\n3 0\n")

    def test_irregular_rejected(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph("4 2 4\n0 1\n0 2\n0 3\n1 2\n")
        assert exc_info.value.diagnostics == {"vertex": 0, "degree": 3}

    def test_missing_edge_lines(self):
        with pytest.raises(GraphParseError):
            parse_graph("4 2 4\n0 1\n1 2\n")

    def test_empty_file(self):
        with pytest.raises(GraphParseError):
            parse_graph("\n# nothing\n")

    def test_write_then_read(self, tmp_path, c8):
        path = tmp_path / "c8.txt"
        write_graph(c8, path)
        assert path.read_text().splitlines()[0] == "8 2 8"
        assert read_graph(path) == c8
        assert format_graph(c8) == path.read_text()

    def test_missing_file(self, tmp_path):
        with pytest.raises(GraphParseError):
            read_graph(tmp_path / "absent.txt")


class TestSpectrum:
    """Normalized Laplacian eigenvalues and the Cheeger sweep."""

    def test_complete_graph_spectrum(self, k5):
        """Test that K_n has eigenvalues 0 and n/(n-1) with multiplicity n-1."""
        spectrum = laplacian_spectrum(k5)
        assert spectrum.lambda_k(1) == pytest.approx(0.0, abs=1e-9)
        assert spectrum.eigenvalues[1:] == pytest.approx([1.25] * 4)
        assert spectrum.max_residual < 1e-9

    def test_trace_identity(self, c8):
        """Test that the eigenvalues of I - A/r sum to n."""
        assert float(laplacian_spectrum(c8).eigenvalues.sum()) == pytest.approx(8.0)

    def test_cycle_lambda_2(self, c8):
        assert laplacian_spectrum(c8).lambda_k(2) == pytest.approx(1 - math.cos(math.pi / 4))

    def test_lambda_k_range(self, c8):
        with pytest.raises(InvalidArgumentError):
            laplacian_spectrum(c8).lambda_k(9)

    def test_size_cap(self, c8):
        with pytest.raises(ResourceLimitError):
            laplacian_spectrum(c8, max_n=4)

    def test_threshold_rank(self, two_k4, c8):
        assert threshold_rank(two_k4, 0.1) == 2
        assert threshold_rank(c8, 0.1) == 1
        assert threshold_rank(c8, 0.5) == 3

    def test_spectral_sweep_within_cheeger_interval(self, c8):
        cut = spectral_sweep(c8)
        lam2 = 1 - math.cos(math.pi / 4)
        assert cut.trace["lambda_2"] == pytest.approx(lam2)
        assert cut.trace["cheeger_lower"] <= 0.25 <= float(cut.expansion) <= cut.trace["cheeger_upper"]
        assert len(cut.S) <= 4

    def test_check_fact_lambda(self, c8):
        fs = [c8.indicator({0, 1, 2, 3}), c8.indicator({4, 5, 6, 7})]
        report = check_fact_lambda(c8, fs)
        assert report.k == 2
        assert report.rayleigh_quotients == pytest.approx([0.25, 0.25])
        assert report.bound == pytest.approx(0.5)
        assert report.holds

    def test_check_fact_lambda_overlap(self, c8):
        with pytest.raises(InvalidArgumentError):
            check_fact_lambda(c8, [c8.indicator({0, 1}), c8.indicator({1, 2})])


@pytest.mark.parametrize("family", ["cycle", "clusters", "random_regular"])
class TestFactLambdaOnFamilies:
    """lambda_k <= 2 max R(f_i) for random disjointly supported functions."""

    @staticmethod
    def build(family, seed):
        if family == "cycle":
            return cycle(6 + 2 * seed)
        if family == "clusters":
            return cluster_graph(2 + seed % 2, 4 + seed % 3, 1)
        return random_regular(10, 3, seed)

    @pytest.mark.parametrize("seed", range(4))
    def test_random_disjoint_functions(self, family, seed):
        G = self.build(family, seed)
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 5))
        labels = rng.integers(0, k, size=G.n)
        labels[:k] = np.arange(k)
        fs = [np.where(labels == i, rng.uniform(0.1, 2.0, size=G.n), 0.0) for i in range(k)]
        report = check_fact_lambda(G, fs)
        assert report.k == k
        assert report.holds
        assert report.lambda_k <= report.bound + 1e-9
