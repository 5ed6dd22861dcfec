"""Covers, certificates and the set operations that produce them.

A cover is up to 2k vertex sets of small diameter; a certificate is the
object returned when no such cover exists: k disjointly supported functions
of small Rayleigh quotient, or k disjoint sets of small expansion.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from ..graph.graph import Graph, VertexSet, check_disjoint_supports, expansion, rayleigh
from ..metric.distance import DistanceMatrix, diameter
from ..utils.enum import CertificateVariant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cover:
    """Vertex sets with their exact diameters under a named metric."""
    sets: Tuple[VertexSet, ...]
    diameters: Tuple[float, ...]
    metric: str

    @classmethod
    def build(cls, sets: Sequence[Any], d: DistanceMatrix, metric: str) -> "Cover":
        """Freeze ``sets`` and record ``diam(T, d)`` for each (0 for empty sets)."""
        frozen = tuple(frozenset(int(v) for v in s) for s in sets)
        return cls(sets=frozen, diameters=tuple(diameter(s, d) if s else 0.0 for s in frozen), metric=metric)

    @property
    def union(self) -> VertexSet:
        return frozenset().union(*self.sets) if self.sets else frozenset()

    @property
    def covered_count(self) -> int:
        return len(self.union)

    @property
    def max_diameter(self) -> float:
        return max(self.diameters, default=0.0)

    def nonempty(self) -> Tuple[VertexSet, ...]:
        return tuple(s for s in self.sets if s)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sets": [sorted(s) for s in self.sets],
            "diameters": list(self.diameters),
            "metric": self.metric,
            "covered_count": self.covered_count,
        }


@dataclass(frozen=True)
class Certificate:
    """k disjointly supported functions or k disjoint nonempty sets.

    ``values`` holds the Rayleigh quotient of each function or the expansion
    of each set.
    """
    variant: CertificateVariant
    functions: Tuple[np.ndarray, ...] = ()
    sets: Tuple[VertexSet, ...] = ()
    values: Tuple[float, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def spectral(cls, G: Graph, functions: Sequence[Sequence[float]], **metadata) -> "Certificate":
        fs = tuple(np.array(f, dtype=float) for f in functions)
        check_disjoint_supports(fs)
        return cls(variant=CertificateVariant.Spectral, functions=fs,
                   values=tuple(rayleigh(G, f) for f in fs), metadata=metadata)

    @classmethod
    def expansion(cls, G: Graph, sets: Sequence[Any], **metadata) -> "Certificate":
        frozen = tuple(G.vertex_set(s) for s in sets)
        check_disjoint_sets(frozen)
        return cls(variant=CertificateVariant.Expansion, sets=frozen,
                   values=tuple(float(expansion(G, s)) for s in frozen), metadata=metadata)

    @property
    def k(self) -> int:
        return len(self.functions) if self.variant == CertificateVariant.Spectral else len(self.sets)

    @property
    def max_value(self) -> float:
        return max(self.values, default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"variant": self.variant.value, "values": list(self.values), "max_value": self.max_value}
        if self.variant == CertificateVariant.Spectral:
            out["functions"] = [f.tolist() for f in self.functions]
        else:
            out["sets"] = [sorted(s) for s in self.sets]
        out["metadata"] = self.metadata
        return out


def check_disjoint_sets(sets: Sequence[VertexSet]) -> None:
    """Raise InvalidArgumentError unless the sets are nonempty and pairwise disjoint."""
    seen: set = set()
    for i, s in enumerate(sets):
        if not s:
            raise InvalidArgumentError(f"set {i} is empty")
        overlap = seen & s
        if overlap:
            raise InvalidArgumentError(f"set {i} overlaps an earlier set at vertex {min(overlap)}",
                                       {"set": i, "vertex": min(overlap)})
        seen |= s


def merge_groups(weights: Sequence[float], target: int) -> List[List[int]]:
    """Index groups of the greedy merge.

    The ``target`` heaviest inputs (stable on ties) seed the groups; every
    other input, heaviest first, joins the group of currently smallest total
    weight, ties to the lowest group index. Missing groups are empty.
    """
    if target < 1:
        raise InvalidArgumentError(f"target must be positive, got {target}")
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    groups = [[i] for i in order[:target]]
    totals = [float(weights[i]) for i in order[:target]]
    for i in order[target:]:
        j = min(range(len(groups)), key=lambda g: (totals[g], g))
        groups[j].append(i)
        totals[j] += weights[i]
    groups.extend([] for _ in range(target - len(groups)))
    return groups


def merge_small(sets: Sequence[VertexSet], target: int, weight: Callable[[VertexSet], float]) -> List[VertexSet]:
    """Merge disjoint ``sets`` into exactly ``target`` disjoint sets with the same union.

    Group weights add up as sets are merged, which is a lower bound on the
    interior of a union when ``weight`` is interior size.
    """
    weights = [weight(s) for s in sets]
    return [frozenset().union(*(sets[i] for i in g)) for g in merge_groups(weights, target)]


def bump_functions(T: Sequence[VertexSet], interiors: Sequence[VertexSet], alpha: float, delta: float,
                   d: DistanceMatrix) -> List[np.ndarray]:
    """``f_i(v) = max(0, 1 - alpha * d(v, interior_i) / delta)``.

    Each f_i is ``(alpha/delta)``-Lipschitz under d, equals 1 on its interior
    and vanishes outside ``T_i`` whenever the interiors are taken at radius
    ``delta/alpha``.

    Raises:
        InvalidArgumentError: on an empty interior or lengths that disagree.
    """
    if len(T) != len(interiors):
        raise InvalidArgumentError(f"{len(T)} sets but {len(interiors)} interiors")
    out = []
    for i, inner in enumerate(interiors):
        if not inner:
            raise InvalidArgumentError(f"interior {i} is empty")
        reach = np.min(d.values[:, sorted(inner)], axis=1)
        out.append(np.maximum(0.0, 1.0 - alpha * reach / delta))
    return out


def cover_transfer(sets: Sequence[VertexSet], d: DistanceMatrix, d_prime: DistanceMatrix, delta: float,
                   eps: float) -> Cover:
    """Move sets of d-diameter delta to sets of d'-diameter 4 delta.

    For each set, the member u maximising ``|ball_{d'}(u, 2 delta) & S|``
    (lowest index on ties) is used when that count is at least
    ``(1 - eps/2)|S|``; otherwise the set contributes an empty output.
    Outputs are clipped to the input set, so they stay disjoint when the
    inputs are.
    """
    out: List[VertexSet] = []
    bad = 0
    for S in sets:
        idx = sorted(S)
        if not idx:
            out.append(frozenset())
            continue
        close = d_prime.values[np.ix_(idx, idx)] <= 2.0 * delta
        counts = close.sum(axis=1)
        best = int(np.argmax(counts))
        if counts[best] >= (1.0 - eps / 2.0) * len(idx):
            out.append(frozenset(idx[j] for j in np.flatnonzero(close[best])))
        else:
            bad += 1
            out.append(frozenset())
    if bad:
        logger.debug(f"cover_transfer: {bad} of {len(sets)} set(s) had no good centre")
    return Cover.build(out, d_prime, d_prime.kind.value)
