"""Threshold rounding of the Frechet map ``f(v) = d(v, U)``."""

import logging
from fractions import Fraction
from typing import Iterable, Tuple

import numpy as np

from ..errors import DegenerateInputError
from ..graph.graph import Cut, Graph, VertexSet, make_cut, smaller_side
from ..metric.distance import DistanceMatrix, dist_to_set_all

logger = logging.getLogger(__name__)

FACT_RATIO_TOL = 1e-9


def cut_key(cut: Cut) -> Tuple[Fraction, int, Tuple[int, ...]]:
    """Order cuts by expansion, then size, then sorted vertex ids."""
    return cut.expansion, len(cut.S), tuple(sorted(cut.S))


def best_cut(*cuts: Cut | None) -> Cut | None:
    present = [c for c in cuts if c is not None]
    return min(present, key=cut_key) if present else None


def fact_ratio(G: Graph, f: np.ndarray) -> float:
    """``sum_E |f(u)-f(v)| / ((r/n) sum_{u<v} |f(u)-f(v)|)``; the sweep never does worse."""
    e = G.edge_array
    numerator = float(np.sum(np.abs(f[e[:, 0]] - f[e[:, 1]]))) if e.size else 0.0
    ordered = np.sort(f)
    n = len(f)
    # sum_{u<v} |f(u) - f(v)| over sorted values
    denominator = float(np.sum(ordered * (2 * np.arange(n) - n + 1)))
    if denominator <= 0:
        return float("inf")
    return numerator / (G.r / n * denominator)


def frechet_sweep(G: Graph, f: np.ndarray, method: str = "frechet", seed: int | None = None) -> Cut:
    """Best threshold cut of f, with the smaller side reported.

    Only thresholds between distinct values are tried. Ties go to the smaller
    side, then to the lexicographically smaller vertex list.

    Raises:
        DegenerateInputError: if f is constant.
    """
    f = np.asarray(f, dtype=float)
    order = sorted(range(G.n), key=lambda v: (f[v], v))
    inside = np.zeros(G.n, dtype=bool)
    crossing = 0
    best: Tuple[Tuple[Fraction, int, Tuple[int, ...]], VertexSet] | None = None
    for t in range(1, G.n):
        v = order[t - 1]
        inner = sum(1 for u in G.neighbours[v] if inside[u])
        crossing += G.r - 2 * inner
        inside[v] = True
        if f[order[t - 1]] == f[order[t]]:
            continue
        side = smaller_side(G, order[:t])
        key = (Fraction(crossing, G.r * len(side)), len(side), tuple(sorted(side)))
        if best is None or key < best[0]:
            best = (key, side)
    if best is None:
        raise DegenerateInputError("all Frechet values are equal; no threshold separates the vertices",
                                   {"value": float(f[0])})
    ratio = fact_ratio(G, f)
    cut = make_cut(G, best[1], method=method, seed=seed)
    cut.trace.update({"fact_ratio": ratio, "within_fact_ratio": float(cut.expansion) <= ratio + FACT_RATIO_TOL})
    if not cut.trace["within_fact_ratio"]:
        logger.error(f"Sweep expansion {float(cut.expansion):.6g} exceeds the Frechet ratio {ratio:.6g}")
    return cut


def frechet_round(G: Graph, d: DistanceMatrix, U: Iterable[int], method: str = "frechet",
                  seed: int | None = None) -> Cut:
    """Sweep ``f(v) = d(v, U)`` over all thresholds and return the best cut.

    Raises:
        InvalidArgumentError: if U is empty.
        DegenerateInputError: if every vertex is at the same distance from U.
    """
    f = dist_to_set_all(U, d)
    return frechet_sweep(G, f, method=method, seed=seed)
