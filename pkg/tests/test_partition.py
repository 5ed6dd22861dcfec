"""
Tests for padded and Lipschitz random partitions, covers, certificates and the set operations on them.
"""

import numpy as np
import pytest

from sparsecut.errors import InvalidArgumentError
from sparsecut.metric import diameter, pairwise_euclidean, pairwise_squared
from sparsecut.partition import (
    Certificate,
    Cover,
    bump_functions,
    check_disjoint_sets,
    cover_transfer,
    estimate_lipschitz,
    interior,
    lipschitz_partition,
    measure_padding,
    merge_groups,
    merge_small,
    padded_partition,
    separation_frequencies,
)
from sparsecut.sdp import EmbeddingSolution
from sparsecut.utils.enum import CertificateVariant, SolutionKind


@pytest.fixture
def cloud():
    """Twelve seeded Gaussian points in three dimensions."""
    rng = np.random.default_rng(2024)
    return EmbeddingSolution(rng.standard_normal((12, 3)), 0.0, SolutionKind.Reduced)


def assert_partition_of(P, n):
    union = frozenset().union(*P.blocks)
    assert union == frozenset(range(n))
    assert sum(len(b) for b in P.blocks) == n


class TestPaddedPartition:
    """Delta-bounded padded partitions."""

    @pytest.mark.parametrize("scheme", ["grid", "ckr"])
    def test_blocks_partition_vertices_with_bounded_diameter(self, cloud, scheme):
        P = padded_partition(cloud, delta=1.0, eps=0.25, seed=3, scheme=scheme)
        assert_partition_of(P, 12)
        d = pairwise_euclidean(cloud)
        assert all(diameter(b, d) <= 1.0 + 1e-9 for b in P.blocks)
        assert P.scheme == scheme

    def test_grid_parameter(self, cloud):
        P = padded_partition(cloud, delta=1.0, eps=0.25, seed=3)
        assert P.parameter == pytest.approx(2 * 3 ** 1.5 / 0.25)
        assert P.metadata["h"] == 3

    def test_deterministic(self, cloud):
        first = padded_partition(cloud, delta=0.8, eps=0.5, seed=9)
        second = padded_partition(cloud, delta=0.8, eps=0.5, seed=9)
        assert first.blocks == second.blocks

    def test_labels_and_block_of(self, cloud):
        P = padded_partition(cloud, delta=1.0, eps=0.25, seed=3)
        labels = P.labels()
        for v in range(12):
            assert v in P.block_of(v)
            assert all(labels[u] == labels[v] for u in P.block_of(v))

    def test_invalid_arguments(self, cloud):
        with pytest.raises(InvalidArgumentError):
            padded_partition(cloud, delta=1.0, eps=1.0, seed=0)
        with pytest.raises(InvalidArgumentError):
            padded_partition(cloud, delta=0.0, eps=0.5, seed=0)
        with pytest.raises(InvalidArgumentError):
            padded_partition(cloud, delta=1.0, eps=0.5, seed=0, scheme="hex")

    def test_measure_padding_is_a_probability(self, cloud):
        value = measure_padding(cloud, delta=1.0, eps=0.25, rho=0.05, trials=4, seed=1)
        assert 0.0 <= value <= 1.0


class TestLipschitzPartition:
    """Ball-carving partitions and the measured Lipschitz constant."""

    def test_single_block_for_large_delta(self, cloud):
        """Test that a radius above the point-set diameter carves one block whose interior is everything."""
        P = lipschitz_partition(cloud, delta=100.0, seed=0)
        assert P.blocks == (frozenset(range(12)),)
        assert interior(P, range(12), 1.0, pairwise_euclidean(cloud)) == frozenset(range(12))

    def test_blocks_bounded(self, cloud):
        P = lipschitz_partition(cloud, delta=1.0, seed=5)
        assert_partition_of(P, 12)
        d = pairwise_euclidean(cloud)
        assert all(diameter(b, d) <= 1.0 + 1e-9 for b in P.blocks)
        assert P.parameter is None

    def test_estimate_attached(self, cloud):
        P = lipschitz_partition(cloud, delta=1.0, seed=5, estimate_trials=6)
        assert P.parameter == pytest.approx(estimate_lipschitz(cloud, 1.0, 6, 5))
        assert P.parameter >= 0.0

    def test_separation_frequencies(self, cloud):
        freq = separation_frequencies(cloud, delta=1.0, trials=5, seed=2)
        assert freq.shape == (12, 12)
        assert np.all((freq >= 0.0) & (freq <= 1.0))
        assert np.allclose(np.diag(freq), 0.0)
        with pytest.raises(InvalidArgumentError):
            separation_frequencies(cloud, delta=1.0, trials=0, seed=2)

    def test_interior_of_foreign_set(self, cloud):
        P = lipschitz_partition(cloud, delta=100.0, seed=0)
        with pytest.raises(InvalidArgumentError):
            interior(P, {0, 1}, 0.1, pairwise_euclidean(cloud))

    def test_to_dict(self, cloud):
        data = lipschitz_partition(cloud, delta=100.0, seed=0).to_dict()
        assert data["scheme"] == "ckr"
        assert data["blocks"] == [list(range(12))]

    def test_near_pair_separation_bounded(self):
        """Test that a planted near pair is separated at a rate within the measured constant and 4 sqrt(h)."""
        line = EmbeddingSolution(np.array([[0.0], [0.02], [0.3]]), 0.0, SolutionKind.Reduced)
        trials, delta = 400, 1.0
        estimate = estimate_lipschitz(line, delta, trials, seed=9)
        freq = separation_frequencies(line, delta, trials, seed=9)
        d = pairwise_euclidean(line).values
        assert estimate <= 4.0 * np.sqrt(line.m)
        for u in range(3):
            for v in range(u + 1, 3):
                assert freq[u, v] <= estimate * d[u, v] / delta + 1e-12


class TestMerging:
    """Greedy merging of sets into exactly 2k groups."""

    def test_merge_groups(self):
        assert merge_groups([5, 3, 2, 1], 2) == [[0, 3], [1, 2]]

    def test_merge_groups_pads_with_empty_groups(self):
        assert merge_groups([1.0], 3) == [[0], [], []]

    def test_merge_groups_target(self):
        with pytest.raises(InvalidArgumentError):
            merge_groups([1.0], 0)

    def test_merge_small_preserves_union(self):
        sets = [frozenset({0, 1, 2}), frozenset({3}), frozenset({4, 5})]
        merged = merge_small(sets, 2, len)
        assert len(merged) == 2
        assert frozenset().union(*merged) == frozenset(range(6))
        assert sum(len(s) for s in merged) == 6

    def test_check_disjoint_sets(self):
        check_disjoint_sets([frozenset({0}), frozenset({1})])
        with pytest.raises(InvalidArgumentError):
            check_disjoint_sets([frozenset({0, 1}), frozenset({1})])
        with pytest.raises(InvalidArgumentError):
            check_disjoint_sets([frozenset()])

    @pytest.mark.parametrize("seed", range(20))
    def test_merged_groups_carry_eps_share(self, seed):
        """Test that when the 2k largest blocks miss eps*n/2 vertices every merged group holds eps*n/8k."""
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 4))
        sizes = sorted(rng.integers(1, 10, size=int(rng.integers(2 * k + 1, 30))).tolist(), reverse=True)
        n = sum(sizes)
        rest = sum(sizes[2 * k:])
        for eps in (0.1, 0.25, 0.5, 1.0):
            if rest < eps * n / 2:
                continue
            groups = merge_groups(sizes, 2 * k)
            assert min(sum(sizes[i] for i in g) for g in groups) >= eps * n / (8 * k)


class TestCoverOperations:
    """Covers, bump functions and cover transfer between metrics."""

    def test_cover_build(self):
        line = EmbeddingSolution(np.array([[0.0], [0.0], [2.0]]), 0.0, SolutionKind.Reduced)
        cover = Cover.build([{0, 1}, set(), {1, 2}], pairwise_squared(line), "squared")
        assert cover.diameters == (0.0, 0.0, 4.0)
        assert cover.covered_count == 3
        assert cover.nonempty() == (frozenset({0, 1}), frozenset({1, 2}))
        assert cover.max_diameter == 4.0
        assert cover.to_dict()["sets"] == [[0, 1], [], [1, 2]]

    def test_bump_functions(self):
        line = EmbeddingSolution(np.array([[0.0], [0.5], [2.0], [3.0]]), 0.0, SolutionKind.Reduced)
        d = pairwise_euclidean(line)
        (f,) = bump_functions([frozenset({0, 1})], [frozenset({0})], alpha=1.0, delta=1.0, d=d)
        assert f.tolist() == pytest.approx([1.0, 0.5, 0.0, 0.0])

    def test_bump_functions_empty_interior(self):
        line = EmbeddingSolution(np.array([[0.0], [1.0]]), 0.0, SolutionKind.Reduced)
        with pytest.raises(InvalidArgumentError):
            bump_functions([frozenset({0})], [frozenset()], 1.0, 1.0, pairwise_euclidean(line))

    @pytest.mark.parametrize("alpha", [1.0, 2.0, 4.0])
    def test_bump_functions_lipschitz_on_every_pair(self, cloud, alpha):
        delta = 1.5
        d = pairwise_euclidean(cloud)
        P = padded_partition(cloud, delta, 0.5, seed=4, scheme="ckr")
        T, interiors = [], []
        for block in P.blocks:
            inner = interior(P, block, delta / alpha, d)
            if inner:
                T.append(block)
                interiors.append(inner)
        if not T:
            T, interiors = [frozenset(range(12))], [frozenset(range(12))]
        fs = bump_functions(T, interiors, alpha, delta, d)
        for f, block, inner in zip(fs, T, interiors):
            assert np.all(f[sorted(inner)] == 1.0)
            outside = sorted(set(range(12)) - block)
            assert np.all(f[outside] == 0.0)
            for u in range(12):
                for v in range(12):
                    assert abs(f[u] - f[v]) <= alpha / delta * d.values[u, v] + 1e-12

    def test_cover_transfer(self):
        line = EmbeddingSolution(np.array([[0.0], [0.0], [5.0], [5.0]]), 0.0, SolutionKind.Reduced)
        d = pairwise_squared(line)
        cover = cover_transfer([frozenset({0, 1}), frozenset({2, 3})], d, d, delta=0.1, eps=0.2)
        assert cover.sets == (frozenset({0, 1}), frozenset({2, 3}))
        assert cover.max_diameter == 0.0

    def test_cover_transfer_drops_spread_set(self):
        line = EmbeddingSolution(np.array([[0.0], [1.0], [2.0], [3.0]]), 0.0, SolutionKind.Reduced)
        d = pairwise_squared(line)
        cover = cover_transfer([frozenset(range(4))], d, d, delta=0.1, eps=0.2)
        assert cover.sets == (frozenset(),)


class TestCertificate:
    """Certificate construction."""

    def test_expansion_certificate(self, c8):
        cert = Certificate.expansion(c8, [{0, 1, 2, 3}, {4, 5}])
        assert cert.variant == CertificateVariant.Expansion
        assert cert.k == 2
        assert cert.values == (0.25, 0.5)
        assert cert.max_value == 0.5
        assert cert.to_dict()["sets"] == [[0, 1, 2, 3], [4, 5]]

    def test_spectral_certificate(self, c8):
        cert = Certificate.spectral(c8, [c8.indicator({0, 1, 2, 3})], alpha=2.0)
        assert cert.k == 1
        assert cert.values == pytest.approx((0.25,))
        assert cert.to_dict()["metadata"] == {"alpha": 2.0}

    def test_overlap_rejected(self, c8):
        with pytest.raises(InvalidArgumentError):
            Certificate.expansion(c8, [{0, 1}, {1, 2}])
        with pytest.raises(InvalidArgumentError):
            Certificate.spectral(c8, [c8.indicator({0, 1}), c8.indicator({1})])
