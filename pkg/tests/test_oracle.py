"""
Tests for the brute-force expansion oracles and the cover and certificate verifiers.
"""

from fractions import Fraction

import numpy as np
import pytest

from sparsecut.errors import InvalidArgumentError, ResourceLimitError
from sparsecut.graph import cluster_graph, cycle, expansion, laplacian_spectrum, random_regular
from sparsecut.metric import DistanceMatrix
from sparsecut.oracle import brute_phi, brute_phi_k, brute_sse, cover_report, verify_certificate, verify_cover
from sparsecut.partition import Certificate, Cover
from sparsecut.utils.enum import CertificateVariant, DistanceKind


def line_metric(points):
    x = np.asarray(points, dtype=float)
    return DistanceMatrix((x[:, None] - x[None, :]) ** 2, DistanceKind.Squared)


class TestBrutePhi:
    """phi(G) by enumeration."""

    def test_cycle(self, c8):
        """Test that phi(C8) = 1/4 with the lexicographically smallest arc as witness."""
        result = brute_phi(c8)
        assert result.value == Fraction(1, 4)
        assert result.witness == (frozenset({0, 1, 2, 3}),)

    def test_enumerated_count(self, c8):
        """Test that exactly the nonempty sets of size at most n/2 are evaluated."""
        assert brute_phi(c8).enumerated_count == 8 + 28 + 56 + 70

    def test_complete_graph(self, k5):
        result = brute_phi(k5)
        assert result.value == Fraction(3, 4)
        assert result.witness == (frozenset({0, 1}),)

    def test_disconnected(self, two_k4):
        assert brute_phi(two_k4).value == 0

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError) as exc_info:
            brute_phi(cycle(22))
        assert exc_info.value.diagnostics == {"n": 22, "cap": 20}

    def test_to_dict(self, c8):
        data = brute_phi(c8).to_dict()
        assert data["value_exact"] == "1/4"
        assert data["witness"] == [[0, 1, 2, 3]]


class TestBruteSSE:
    """Small-set expansion by enumeration."""

    def test_singletons(self, c8):
        assert brute_sse(c8, 1).value == 1

    def test_whole_vertex_set_admitted(self, c8):
        result = brute_sse(c8, 8)
        assert result.value == 0
        assert result.witness == (frozenset(range(8)),)

    def test_monotone_in_size(self, c8):
        values = [brute_sse(c8, s).value for s in range(1, 5)]
        assert values == sorted(values, reverse=True)
        assert values[-1] == Fraction(1, 4)

    def test_invalid_size(self, c8):
        with pytest.raises(InvalidArgumentError):
            brute_sse(c8, 0)


class TestBrutePhiK:
    """phi_k(G): k disjoint sets minimising the largest expansion."""

    def test_components(self, two_k4):
        result = brute_phi_k(two_k4, 2)
        assert result.value == 0
        assert set(result.witness) == {frozenset(range(4)), frozenset(range(4, 8))}

    def test_k_equals_one(self, c8):
        assert brute_phi_k(c8, 1).value == 0

    def test_cycle_two_arcs(self, c8):
        result = brute_phi_k(c8, 2)
        assert result.value == Fraction(1, 4)
        first, second = result.witness
        assert not first & second

    def test_monotone_in_k(self, c8):
        values = [brute_phi_k(c8, k).value for k in (1, 2, 3)]
        assert values == sorted(values)

    def test_too_many_sets(self, c8):
        with pytest.raises(InvalidArgumentError):
            brute_phi_k(c8, 9)

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError):
            brute_phi_k(cycle(14), 4)


ORDERING_GRAPHS = [cycle(8), cycle(10), cluster_graph(2, 4, 1), cluster_graph(3, 4, 1), random_regular(10, 3, 1),
                   random_regular(12, 4, 2)]


@pytest.mark.parametrize("G", ORDERING_GRAPHS, ids=lambda G: f"n{G.n}r{G.r}")
class TestOracleOrderings:
    """Inequalities that tie the oracles to each other and to the spectrum."""

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_phi_k_at_least_half_lambda_k(self, G, k):
        lam = laplacian_spectrum(G, with_vectors=False).lambda_k(k)
        assert float(brute_phi_k(G, k).value) >= lam / 2 - 1e-9

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_phi_k_at_least_small_set_expansion(self, G, k):
        assert brute_phi_k(G, k).value >= brute_sse(G, G.n // k).value

    def test_brute_phi_below_random_cuts(self, G):
        best = brute_phi(G).value
        rng = np.random.default_rng(G.n)
        for _ in range(50):
            size = int(rng.integers(1, G.n // 2 + 1))
            S = rng.choice(G.n, size=size, replace=False)
            assert best <= expansion(G, S)


class TestVerifyCover:
    """Diameter and coverage checks of a cover."""

    def test_pass(self):
        d = line_metric([0, 0, 1, 1])
        cover = Cover.build([{0, 1}, {2, 3}], d, "squared")
        assert verify_cover(cover, d, delta=0.5, eps=0.25)
        assert cover.diameters == (0.0, 0.0)
        assert cover.covered_count == 4

    def test_insufficient_coverage(self):
        d = line_metric([0, 0, 1, 1])
        report = cover_report(Cover.build([{0, 1}], d, "squared"), d, delta=0.5, eps=0.25)
        assert report["diameter_ok"]
        assert not report["coverage_ok"]
        assert not report["pass"]

    def test_diameter_too_large(self):
        d = line_metric([0, 0, 1, 1])
        cover = Cover.build([{0, 2}, {1, 3}], d, "squared")
        assert not verify_cover(cover, d, delta=0.5, eps=0.25)

    def test_vertex_out_of_range(self):
        d = line_metric([0, 1])
        cover = Cover(sets=(frozenset({0, 5}),), diameters=(0.0,), metric="squared")
        with pytest.raises(InvalidArgumentError):
            verify_cover(cover, d, delta=1.0, eps=0.5)


class TestVerifyCertificate:
    """Recomputation of certificate values."""

    def test_expansion_certificate(self, c8):
        cert = Certificate.expansion(c8, [{0, 1, 2, 3}, {4, 5, 6, 7}])
        report = verify_certificate(c8, cert)
        assert report.variant == CertificateVariant.Expansion
        assert report.values == [0.25, 0.25]
        assert report.implied_bound == 0.25
        assert report.matches_recorded

    def test_spectral_certificate(self, c8):
        cert = Certificate.spectral(c8, [c8.indicator({0, 1, 2, 3})])
        report = verify_certificate(c8, cert)
        assert report.k == 1
        assert report.implied_bound == pytest.approx(0.5)

    def test_tampered_values(self, c8):
        cert = Certificate(variant=CertificateVariant.Expansion, sets=(frozenset({0, 1, 2, 3}),), values=(0.1,))
        assert not verify_certificate(c8, cert).matches_recorded

    def test_overlapping_sets(self, c8):
        cert = Certificate(variant=CertificateVariant.Expansion, sets=(frozenset({0, 1}), frozenset({1, 2})),
                           values=(0.5, 0.5))
        with pytest.raises(InvalidArgumentError):
            verify_certificate(c8, cert)

    def test_empty_certificate(self, c8):
        with pytest.raises(InvalidArgumentError):
            verify_certificate(c8, Certificate(variant=CertificateVariant.Spectral))
