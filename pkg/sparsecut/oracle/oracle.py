"""Brute-force ground truth for expansion quantities at desk scale.

Every subset is encoded as a bitmask; cut sizes for a whole block of masks are
computed at once with numpy. Witnesses are the lexicographically smallest
optimal sets (sorted vertex ids compared as tuples).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Tuple

import numpy as np

from ..errors import InvalidArgumentError, ResourceLimitError
from ..graph.graph import Graph, VertexSet

logger = logging.getLogger(__name__)

DEFAULT_MAX_N = 20
DEFAULT_PHI_K_MAX_N = 12
DEFAULT_PHI_K_SMALL_K_MAX_N = 16
_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    """Exact optimum of an enumeration.

    Attributes:
        value: The optimal value as an exact fraction.
        witness: Optimal set(s); one set for phi and sse, k sets for phi_k.
        enumerated_count: Number of candidate sets evaluated.
    """
    value: Fraction
    witness: Tuple[VertexSet, ...]
    enumerated_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": float(self.value),
            "value_exact": f"{self.value.numerator}/{self.value.denominator}",
            "witness": [sorted(s) for s in self.witness],
            "enumerated_count": self.enumerated_count,
        }


def _mask_to_set(mask: int) -> VertexSet:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _lex_key(mask: int) -> Tuple[int, ...]:
    return tuple(sorted(_mask_to_set(mask)))


def _mask_blocks(n: int) -> Iterator[np.ndarray]:
    total = 1 << n
    for start in range(1, total, _CHUNK):
        yield np.arange(start, min(start + _CHUNK, total), dtype=np.int64)


def _cut_and_size(G: Graph, masks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    bits = (masks[:, None] >> np.arange(G.n, dtype=np.int64)[None, :]) & 1
    sizes = bits.sum(axis=1)
    e = G.edge_array
    cuts = np.count_nonzero(bits[:, e[:, 0]] != bits[:, e[:, 1]], axis=1)
    return cuts, sizes


def _best_over(G: Graph, max_size: int) -> OracleResult:
    """Minimum of cut/(r*size) over nonempty masks with size <= max_size."""
    best_value: Fraction | None = None
    best_masks: List[int] = []
    count = 0
    for masks in _mask_blocks(G.n):
        cuts, sizes = _cut_and_size(G, masks)
        keep = sizes <= max_size
        if not keep.any():
            continue
        masks, cuts, sizes = masks[keep], cuts[keep], sizes[keep]
        count += int(masks.size)
        ratios = cuts / sizes
        low = ratios.min()
        for idx in np.flatnonzero(ratios <= low + 1e-12):
            value = Fraction(int(cuts[idx]), G.r * int(sizes[idx]))
            if best_value is None or value < best_value:
                best_value, best_masks = value, [int(masks[idx])]
            elif value == best_value:
                best_masks.append(int(masks[idx]))
    witness = min(best_masks, key=_lex_key)
    return OracleResult(value=best_value, witness=(_mask_to_set(witness),), enumerated_count=count)


def brute_phi(G: Graph, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    """phi(G): minimum expansion over nonempty S with |S| <= n/2."""
    if G.n > max_n:
        raise ResourceLimitError(f"brute_phi: n={G.n} exceeds cap {max_n}", {"n": G.n, "cap": max_n})
    return _best_over(G, G.n // 2)


def brute_sse(G: Graph, s: int, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    """sse_s(G): minimum expansion over nonempty S with |S| <= s.

    ``S = V`` is admitted when ``s = n`` and has expansion 0, following the
    definition literally.
    """
    if s < 1:
        raise InvalidArgumentError(f"brute_sse needs s >= 1, got {s}")
    if G.n > max_n:
        raise ResourceLimitError(f"brute_sse: n={G.n} exceeds cap {max_n}", {"n": G.n, "cap": max_n})
    return _best_over(G, min(s, G.n))


def _phi_k_cap(G: Graph, k: int, max_n: int, small_k_max_n: int) -> None:
    if k < 1:
        raise InvalidArgumentError(f"brute_phi_k needs k >= 1, got {k}")
    if k > G.n:
        raise InvalidArgumentError(f"cannot place {k} disjoint nonempty sets in {G.n} vertices")
    if G.n <= max_n or (k <= 3 and G.n <= small_k_max_n):
        return
    raise ResourceLimitError(f"brute_phi_k: n={G.n}, k={k} exceeds the enumeration cap",
                             {"n": G.n, "k": k, "cap": max_n, "small_k_cap": small_k_max_n})


def brute_phi_k(G: Graph, k: int, max_n: int = DEFAULT_PHI_K_MAX_N,
                small_k_max_n: int = DEFAULT_PHI_K_SMALL_K_MAX_N) -> OracleResult:
    """phi_k(G): min over k disjoint nonempty sets of the largest expansion.

    Sets of any size are allowed, including V itself when k = 1 (value 0).
    The search thresholds on candidate values: a family with max expansion
    <= t exists iff k disjoint sets can be packed from the inclusion-minimal
    sets of expansion <= t. Packing is decided by a memoised scan that places
    each set at its smallest vertex.
    """
    _phi_k_cap(G, k, max_n, small_k_max_n)
    n = G.n
    full = np.arange(1 << n, dtype=np.int64)
    cuts, sizes = _cut_and_size(G, full[1:])
    # cut * lcm(1..n) / size orders the expansions exactly in integers.
    lcm = int(np.lcm.reduce(np.arange(1, n + 1, dtype=np.int64)))
    keys = np.concatenate([[np.iinfo(np.int64).max], cuts * (lcm // sizes)])
    distinct = np.unique(keys[1:])

    def packing(threshold_key: int) -> Tuple[int, ...] | None:
        good = keys <= threshold_key
        # Subset-OR transform: below[mask] is set when some submask is good.
        below = good.copy()
        for i in range(n):
            with_bit = full[(full >> i) & 1 == 1]
            below[with_bit] |= below[with_bit ^ (1 << i)]
        proper = np.zeros_like(good)
        for i in range(n):
            with_bit = full[(full >> i) & 1 == 1]
            proper[with_bit] |= below[with_bit ^ (1 << i)]
        minimal = full[good & ~proper]

        by_low: Dict[int, List[int]] = {}
        for m in (int(x) for x in minimal):
            by_low.setdefault((m & -m).bit_length() - 1, []).append(m)
        for low in by_low:
            by_low[low].sort(key=_lex_key)

        @lru_cache(maxsize=None)
        def search(v: int, used: int, need: int) -> Tuple[int, ...] | None:
            if need == 0:
                return ()
            if v >= n:
                return None
            for m in by_low.get(v, ()):
                if m & used:
                    continue
                nxt = v + 1
                rest = search(nxt, (used | m) >> nxt << nxt, need - 1)
                if rest is not None:
                    return (m,) + rest
            return search(v + 1, used >> (v + 1) << (v + 1), need)

        return search(0, 0, k)

    lo, hi = 0, len(distinct) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if packing(int(distinct[mid])) is not None:
            hi = mid
        else:
            lo = mid + 1
    best = packing(int(distinct[lo]))
    witness = tuple(_mask_to_set(m) for m in best)
    value = max(Fraction(int(cuts[m - 1]), G.r * int(sizes[m - 1])) for m in best)
    logger.debug(f"brute_phi_k: n={n} k={k} value={value}")
    return OracleResult(value=value, witness=witness, enumerated_count=int(full.size - 1))
