"""Random delta-bounded partitions of point sets in R^h.

Two schemes are provided:

* ``grid``: a randomly shifted axis-aligned grid with cell side
  ``delta / sqrt(h)``. Every cell has Euclidean diameter at most delta.
* ``ckr``: ball carving with a common radius drawn uniformly from
  ``[delta/4, delta/2]`` and a random order of centres.

Both report the parameter the downstream proofs consume: the padding
parameter alpha for padded partitions and a measured Lipschitz constant for
the ball-carving partition. Every sampled partition is checked for
delta-boundedness before it is returned.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from ..graph.graph import VertexSet
from ..metric.distance import DistanceMatrix, pairwise_euclidean
from ..sdp.solution import EmbeddingSolution
from ..utils.seeds import derive_seed, rng_for

logger = logging.getLogger(__name__)

PARTITION_SCHEMES = ("grid", "ckr")
_DIAMETER_SLACK = 1e-9


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering ``0..n-1``, each of diameter at most delta.

    Attributes:
        blocks: The blocks, ordered by smallest member.
        delta: Diameter bound under the Euclidean distance of the points.
        scheme: ``grid`` or ``ckr``.
        seed: Seed the partition was drawn with.
        parameter: Padding parameter alpha, or the Lipschitz estimate.
        metadata: Scheme specific values (cell side, radius, repairs).
    """
    blocks: Tuple[VertexSet, ...]
    delta: float
    scheme: str
    seed: int
    parameter: float | None = None
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self, v: int) -> VertexSet:
        for block in self.blocks:
            if v in block:
                return block
        raise InvalidArgumentError(f"vertex {v} is not covered by the partition")

    def labels(self) -> np.ndarray:
        out = np.empty(self.n, dtype=np.int64)
        for i, block in enumerate(self.blocks):
            out[sorted(block)] = i
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scheme": self.scheme,
            "seed": self.seed,
            "delta": self.delta,
            "parameter": self.parameter,
            "blocks": [sorted(b) for b in self.blocks],
        }


def _group(labels: Sequence[Any]) -> Tuple[VertexSet, ...]:
    groups: Dict[Any, List[int]] = {}
    for v, label in enumerate(labels):
        groups.setdefault(label, []).append(v)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=min))


def _carve(d: np.ndarray, radius: float, order: Iterable[int]) -> np.ndarray:
    assigned = np.full(d.shape[0], -1, dtype=np.int64)
    for c in order:
        mask = (assigned < 0) & (d[c] <= radius)
        assigned[mask] = c
        if (assigned >= 0).all():
            break
    return assigned


def _enforce_bounded(blocks: Tuple[VertexSet, ...], d: np.ndarray, delta: float) -> Tuple[Tuple[VertexSet, ...], int]:
    """Re-carve any block whose diameter exceeds delta; returns the repair count."""
    out: List[VertexSet] = []
    repairs = 0
    for block in blocks:
        idx = sorted(block)
        if float(np.max(d[np.ix_(idx, idx)])) <= delta * (1 + _DIAMETER_SLACK):
            out.append(block)
            continue
        repairs += 1
        sub = d[np.ix_(idx, idx)]
        labels = _carve(sub, delta / 2.0, range(len(idx)))
        out.extend(frozenset(idx[j] for j in g) for g in _group(labels))
    if repairs:
        logger.warning(f"{repairs} block(s) exceeded the diameter bound and were re-carved")
    return tuple(sorted(out, key=min)), repairs


def _harmonic(n: int) -> float:
    return float(np.sum(1.0 / np.arange(1, n + 1)))


def _check_args(points: EmbeddingSolution, delta: float) -> np.ndarray:
    if delta <= 0:
        raise InvalidArgumentError(f"delta must be positive, got {delta}")
    return pairwise_euclidean(points).values


def _grid_labels(z: np.ndarray, side: float, rng: np.random.Generator) -> List[Tuple[int, ...]]:
    shift = rng.uniform(0.0, side, size=z.shape[1])
    cells = np.floor((z - shift) / side).astype(np.int64)
    return [tuple(row) for row in cells]


def padded_partition(points: EmbeddingSolution, delta: float, eps: float, seed: int,
                     scheme: str = "grid") -> Partition:
    """Sample a delta-bounded padded partition of the rows of ``points``.

    The reported alpha is ``2 h^1.5 / eps`` for the grid and ``8 H_n / eps``
    for ball carving; a vertex whose ``delta/alpha`` ball leaves its block is
    counted as unpadded.
    """
    if not 0 < eps < 1:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps}")
    if scheme not in PARTITION_SCHEMES:
        raise InvalidArgumentError(f"unknown partition scheme {scheme!r}", {"choices": list(PARTITION_SCHEMES)})
    d = _check_args(points, delta)
    rng = rng_for(seed)
    h = points.m
    if scheme == "grid":
        side = delta / math.sqrt(h)
        blocks = _group(_grid_labels(points.vectors, side, rng))
        alpha = 2.0 * h ** 1.5 / eps
        metadata: Dict[str, Any] = {"cell_side": side, "h": h}
    else:
        radius = float(rng.uniform(delta / 4.0, delta / 2.0))
        blocks = _group(_carve(d, radius, rng.permutation(points.n)))
        alpha = 8.0 * _harmonic(points.n) / eps
        metadata = {"radius": radius, "h": h}
    blocks, repairs = _enforce_bounded(blocks, d, delta)
    metadata["repairs"] = repairs
    return Partition(blocks=blocks, delta=delta, scheme=scheme, seed=seed, parameter=alpha, metadata=metadata)


def lipschitz_partition(points: EmbeddingSolution, delta: float, seed: int, estimate_trials: int = 0) -> Partition:
    """Sample a CKR ball-carving partition; optionally attach a measured Lipschitz constant.

    With ``estimate_trials > 0`` the ``parameter`` field holds
    ``estimate_lipschitz(points, delta, estimate_trials, seed)``.
    """
    d = _check_args(points, delta)
    rng = rng_for(seed)
    radius = float(rng.uniform(delta / 4.0, delta / 2.0))
    blocks = _group(_carve(d, radius, rng.permutation(points.n)))
    blocks, repairs = _enforce_bounded(blocks, d, delta)
    estimate = estimate_lipschitz(points, delta, estimate_trials, seed) if estimate_trials > 0 else None
    return Partition(blocks=blocks, delta=delta, scheme="ckr", seed=seed, parameter=estimate,
                     metadata={"radius": radius, "h": points.m, "repairs": repairs, "estimate_trials": estimate_trials})


def separation_frequencies(points: EmbeddingSolution, delta: float, trials: int, seed: int) -> np.ndarray:
    """Fraction of ``trials`` ball-carving partitions that separate each pair."""
    if trials < 1:
        raise InvalidArgumentError(f"trials must be positive, got {trials}")
    separated = np.zeros((points.n, points.n))
    for t in range(trials):
        labels = lipschitz_partition(points, delta, derive_seed(seed, t, stream=1)).labels()
        separated += labels[:, None] != labels[None, :]
    return separated / trials


def estimate_lipschitz(points: EmbeddingSolution, delta: float, trials: int, seed: int) -> float:
    """``max over pairs of frequency * delta / d(u, v)`` over ``trials`` samples."""
    d = pairwise_euclidean(points).values
    freq = separation_frequencies(points, delta, trials, seed)
    iu = np.triu_indices(points.n, k=1)
    positive = d[iu] > 0
    if not positive.any():
        return 0.0
    return float(np.max(freq[iu][positive] * delta / d[iu][positive]))


def interior(P: Partition, block: Iterable[int], rho: float, d: DistanceMatrix) -> VertexSet:
    """``{v in block : ball(v, rho, d) is contained in block}``.

    Raises:
        InvalidArgumentError: if ``block`` is not a block of P.
    """
    block = frozenset(int(v) for v in block)
    if block not in P.blocks:
        raise InvalidArgumentError("set is not a block of the partition")
    idx = sorted(block)
    outside = np.ones(d.n, dtype=bool)
    outside[idx] = False
    if not outside.any():
        return block
    reach = np.min(d.values[np.ix_(idx, np.flatnonzero(outside))], axis=1)
    return frozenset(v for v, r in zip(idx, reach) if r > rho)


def measure_padding(points: EmbeddingSolution, delta: float, eps: float, rho: float, trials: int,
                    seed: int, scheme: str = "grid") -> float:
    """Empirical probability over trials and vertices that the rho-ball of a vertex is padded."""
    d = pairwise_euclidean(points)
    padded = 0
    for t in range(trials):
        P = padded_partition(points, delta, eps, derive_seed(seed, t, stream=2), scheme)
        padded += sum(len(interior(P, block, rho, d)) for block in P.blocks)
    return padded / (trials * points.n)
