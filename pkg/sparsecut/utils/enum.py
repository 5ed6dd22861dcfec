"""Enumeration types shared across sparsecut."""

from enum import Enum


class DistanceKind(Enum):
    """Tag describing how a distance matrix was produced.

    Attributes:
        Squared: Squared Euclidean distances of an embedding.
        Euclidean: Plain Euclidean distances of an embedding.
        Sampled: A cut metric drawn from a Sherali-Adams solution.
        Embedded: Distances of the l2 surrogate embedding.
    """
    Squared = "squared"
    Euclidean = "euclidean"
    Sampled = "sampled"
    Embedded = "embedded"

    @property
    def code(self) -> int:
        """Stable integer used by the binary serialization header."""
        return list(DistanceKind).index(self)

    @classmethod
    def from_code(cls, code: int) -> "DistanceKind":
        return list(cls)[code]


class SolutionKind(Enum):
    """Provenance of a vector solution.

    Attributes:
        ArvOptimal: Returned by the ARV solver.
        IntegralCut: Built from a vertex set.
        Reduced: Output of Gaussian dimension reduction.
        Embedded: Output of the l2 surrogate embedding.
    """
    ArvOptimal = "arv-optimal"
    IntegralCut = "integral-cut"
    Reduced = "reduced"
    Embedded = "embedded"


class PipelineMode(Enum):
    """Which structure pipeline and rounding path the pipeline runs.

    Attributes:
        Lambda: Spectral hypothesis, ARV rounding.
        Phi: Order-k expansion hypothesis, ARV rounding.
        SA: Spectral structure, Sherali-Adams rounding.
    """
    Lambda = "lambda"
    Phi = "phi"
    SA = "sa"


class CertificateVariant(Enum):
    Spectral = "spectral"
    Expansion = "expansion"


class Branch(Enum):
    Cover = "cover"
    Certificate = "certificate"
