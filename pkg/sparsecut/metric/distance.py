"""Distance matrices and the scans built on them.

All pair sums run over unordered pairs ``{u, v}`` with ``u != v``; this is the
convention under which an integral cut embedding sums to exactly ``n^2``.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Dict, Iterable

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ..errors import InvalidArgumentError
from ..graph.graph import Graph, VertexSet
from ..utils.enum import DistanceKind

if TYPE_CHECKING:
    from ..sdp.solution import EmbeddingSolution


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative ``n x n`` matrix with zero diagonal.

    Attributes:
        values: The distances; made read-only on construction.
        kind: How the distances were produced.
    """
    values: np.ndarray
    kind: DistanceKind

    def __post_init__(self):
        d = np.array(self.values, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InvalidArgumentError(f"distance matrix must be square, got shape {d.shape}")
        if np.any(d < -1e-9):
            raise InvalidArgumentError("distance matrix has negative entries")
        d = np.maximum((d + d.T) / 2.0, 0.0)
        np.fill_diagonal(d, 0.0)
        d.setflags(write=False)
        object.__setattr__(self, "values", d)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, item):
        return self.values[item]

    def scaled(self, factor: float) -> "DistanceMatrix":
        return DistanceMatrix(self.values * factor, self.kind)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "kind": self.kind.value, "values": self.values.tolist()}


@dataclass(frozen=True)
class DistortionReport:
    """Pairs stretched by more than ``factor`` going from ``d`` to ``d'``.

    Attributes:
        violating_pairs: Count of unordered pairs with ``d' > factor * d``.
        max_ratio: Largest ``d' / d`` over pairs with ``d > 0`` (inf if some
            pair has ``d' > 0 = d``).
        threshold: The pair budget the count is compared against.
        factor: The tested factor.
    """
    violating_pairs: int
    max_ratio: float
    threshold: float
    factor: float

    @property
    def within_budget(self) -> bool:
        return self.violating_pairs <= self.threshold

    def to_dict(self) -> Dict[str, Any]:
        return {
            "violating_pairs": self.violating_pairs,
            "max_ratio": self.max_ratio if np.isfinite(self.max_ratio) else None,
            "threshold": self.threshold if np.isfinite(self.threshold) else None,
            "factor": self.factor,
        }


def squared_distances(vectors: np.ndarray) -> np.ndarray:
    """Pairwise ``||x_u - x_v||^2`` summed from coordinate differences."""
    x = np.asarray(vectors, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] < 2:
        return np.zeros((x.shape[0], x.shape[0]))
    return squareform(pdist(x, "sqeuclidean"))


def pairwise_squared(sol: "EmbeddingSolution") -> DistanceMatrix:
    """``d^2_x(u, v) = ||x_u - x_v||^2``."""
    return DistanceMatrix(squared_distances(sol.vectors), DistanceKind.Squared)


def pairwise_euclidean(sol: "EmbeddingSolution", kind: DistanceKind = DistanceKind.Euclidean) -> DistanceMatrix:
    """``d_x(u, v) = ||x_u - x_v||``."""
    return DistanceMatrix(np.sqrt(squared_distances(sol.vectors)), kind)


def pair_sum(d: DistanceMatrix | np.ndarray, S: Iterable[int] | None = None) -> float:
    """Sum of ``d`` over unordered pairs of S (all of V by default)."""
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d)
    if S is not None:
        idx = sorted(set(S))
        values = values[np.ix_(idx, idx)]
    return float(np.sum(np.triu(values, k=1)))


def triangle_violation(d: DistanceMatrix | np.ndarray) -> float:
    """Largest ``d(u, v) - d(u, w) - d(w, v)`` over all triples, clipped at 0."""
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    worst = 0.0
    for w in range(values.shape[0]):
        # via[u, v] = d(u, w) + d(w, v)
        via = values[:, w][:, None] + values[w, :][None, :]
        worst = max(worst, float(np.max(values - via)))
    return max(worst, 0.0)


def energy(G: Graph, d: DistanceMatrix) -> float:
    """``(1/2rn) sum_E d(u, v)`` with each edge once.

    Raises:
        InvalidArgumentError: if ``d`` is not sized to G.
    """
    if d.n != G.n:
        raise InvalidArgumentError(f"distance matrix has n={d.n}, graph has n={G.n}")
    e = G.edge_array
    if e.size == 0:
        return 0.0
    return float(np.sum(d.values[e[:, 0], e[:, 1]])) / (2.0 * G.r * G.n)


def _nonempty(S: Iterable[int], d: DistanceMatrix, what: str) -> list[int]:
    idx = sorted(set(int(v) for v in S))
    if not idx:
        raise InvalidArgumentError(f"{what} of an empty set")
    if idx[0] < 0 or idx[-1] >= d.n:
        raise InvalidArgumentError(f"vertex outside 0..{d.n - 1}")
    return idx


def diameter(S: Iterable[int], d: DistanceMatrix) -> float:
    """``max_{u, v in S} d(u, v)``."""
    idx = _nonempty(S, d, "diameter")
    return float(np.max(d.values[np.ix_(idx, idx)]))


def ball(u: int, radius: float, d: DistanceMatrix) -> VertexSet:
    """``{v : d(u, v) <= radius}``."""
    return frozenset(int(v) for v in np.flatnonzero(d.values[u] <= radius))


def dist_to_set(u: int, U: Iterable[int], d: DistanceMatrix) -> float:
    """``min_{v in U} d(u, v)``."""
    idx = _nonempty(U, d, "distance to set")
    return float(np.min(d.values[u, idx]))


def dist_to_set_all(U: Iterable[int], d: DistanceMatrix) -> np.ndarray:
    """Vector of ``d(v, U)`` for every vertex v."""
    idx = _nonempty(U, d, "distance to set")
    return np.min(d.values[:, idx], axis=1)


def distorted_pairs(d: DistanceMatrix, d_prime: DistanceMatrix, factor: float,
                    threshold: float = float("inf")) -> DistortionReport:
    """Count unordered pairs with ``d'(u, v) > factor * d(u, v)``.

    ``max_ratio`` is the largest ``d'/d`` over pairs with ``d > 0``.
    """
    if d.n != d_prime.n:
        raise InvalidArgumentError(f"size mismatch: {d.n} vs {d_prime.n}")
    iu = np.triu_indices(d.n, k=1)
    a, b = d.values[iu], d_prime.values[iu]
    violating = int(np.count_nonzero(b > factor * a))
    positive = a > 0
    max_ratio = float(np.max(b[positive] / a[positive])) if positive.any() else 0.0
    if np.any((~positive) & (b > 0)):
        max_ratio = float("inf")
    return DistortionReport(violating_pairs=violating, max_ratio=max_ratio, threshold=threshold, factor=factor)
