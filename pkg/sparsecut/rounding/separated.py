"""Weighted separated-set search over a small set of representatives.

For representatives C with weights w, look for ``U`` in C maximising

    score(U) = sum_{u<v in C} w(u) w(v) |d(u, U) - d(v, U)|

Small C is searched exhaustively. Larger C uses thresholds of Gaussian
projections of classical-MDS coordinates recovered from the squared
distances.
"""

import logging
from typing import Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from ..graph.graph import VertexSet
from ..metric.distance import DistanceMatrix
from ..utils.seeds import derive_seed, rng_for

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_MAX = 15
DEFAULT_PROJECTIONS = 64
DEFAULT_THRESHOLDS = 32
SEPARATION_METHODS = ("auto", "exhaustive", "projection")


def _weights(C: Sequence[int], w: Mapping[int, float] | Sequence[float]) -> np.ndarray:
    if len(set(C)) != len(C):
        raise InvalidArgumentError("representatives must be distinct", {"C": [int(c) for c in C]})
    if isinstance(w, Mapping):
        return np.array([float(w[c]) for c in C])
    weights = np.asarray(w, dtype=float)
    if weights.shape != (len(C),):
        raise InvalidArgumentError(f"{len(C)} representatives but {weights.size} weights")
    return weights


def far_pair_mass(C: Sequence[int], w: Mapping[int, float] | Sequence[float], d2: DistanceMatrix,
                  delta: float) -> float:
    """``sum_{u<v in C} w(u) w(v) 1{d2(u, v) >= delta}``."""
    C = list(C)
    weights = _weights(C, w)
    sub = d2.values[np.ix_(C, C)]
    return float(np.sum(np.triu(np.outer(weights, weights) * (sub >= delta), k=1)))


def separation_score(C: Sequence[int], w: Mapping[int, float] | Sequence[float], d2: DistanceMatrix,
                     U: Sequence[int]) -> float:
    C = list(C)
    weights = _weights(C, w)
    f = np.min(d2.values[np.ix_(C, sorted(U))], axis=1)
    return float(np.sum(np.triu(np.outer(weights, weights) * np.abs(f[:, None] - f[None, :]), k=1)))


def exhaustive_candidates(C: Sequence[int]) -> Iterator[VertexSet]:
    """Every nonempty subset of C, in bitmask order over C's listed order."""
    for mask in range(1, 1 << len(C)):
        yield frozenset(c for i, c in enumerate(C) if mask >> i & 1)


def mds_coordinates(sub: np.ndarray) -> np.ndarray:
    """Points whose squared distances reproduce ``sub`` (negative eigenvalues dropped)."""
    m = sub.shape[0]
    J = np.eye(m) - np.ones((m, m)) / m
    gram = -0.5 * J @ sub @ J
    values, vectors = np.linalg.eigh((gram + gram.T) / 2.0)
    keep = values > 1e-12
    if not keep.any():
        return np.zeros((m, 1))
    return vectors[:, keep] * np.sqrt(values[keep])


def projection_candidates(C: Sequence[int], d2: DistanceMatrix, seed: int, projections: int = DEFAULT_PROJECTIONS,
                          thresholds: int = DEFAULT_THRESHOLDS) -> Iterator[VertexSet]:
    """Sets ``{u : <x_u, g> >= t}`` for random directions g and quantile thresholds t."""
    C = list(C)
    X = mds_coordinates(d2.values[np.ix_(C, C)])
    seen = set()
    for p in range(projections):
        g = rng_for(derive_seed(seed, p, stream=40)).standard_normal(X.shape[1])
        proj = X @ g
        for t in np.unique(np.quantile(proj, np.linspace(0.0, 1.0, thresholds))):
            U = frozenset(c for c, value in zip(C, proj) if value >= t)
            if U and U not in seen:
                seen.add(U)
                yield U


def separated_sets(C: Sequence[int], w: Mapping[int, float] | Sequence[float], d2: DistanceMatrix, delta: float,
                   seed: int, exhaustive_max: int = DEFAULT_EXHAUSTIVE_MAX, projections: int = DEFAULT_PROJECTIONS,
                   thresholds: int = DEFAULT_THRESHOLDS, method: str = "auto") -> Tuple[VertexSet, float]:
    """The best candidate U and its score; the first candidate wins ties.

    Raises:
        InvalidArgumentError: if no weighted pair of C is at distance delta or more
            or C repeats a vertex.
    """
    if method not in SEPARATION_METHODS:
        raise InvalidArgumentError(f"unknown method {method!r}", {"choices": list(SEPARATION_METHODS)})
    C = [int(c) for c in C]
    mass = far_pair_mass(C, w, d2, delta) if C else 0.0
    if mass <= 0:
        raise InvalidArgumentError("no weighted pair of representatives is delta-separated",
                                   {"size": len(C), "delta": delta})
    if method == "auto":
        method = "exhaustive" if len(C) <= exhaustive_max else "projection"
    candidates = (exhaustive_candidates(C) if method == "exhaustive"
                  else projection_candidates(C, d2, seed, projections, thresholds))

    best_U: VertexSet | None = None
    best_score = -1.0
    count = 0
    for U in candidates:
        count += 1
        score = separation_score(C, w, d2, sorted(U))
        if score > best_score:
            best_U, best_score = U, score
    logger.debug(f"separated_sets: {method} over {count} candidate(s), best score {best_score:.6g}")
    return best_U, best_score
