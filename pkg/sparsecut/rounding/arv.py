"""Rounding an ARV solution whose well-spread set is covered by few small sets."""

import logging
from typing import Any, Dict, List, Tuple

from ..config import Config
from ..errors import DegenerateInputError, ExtractionFailureError, InvalidArgumentError
from ..graph.graph import Cut, Graph, VertexSet
from ..metric.distance import DistanceMatrix, diameter, pairwise_squared
from ..partition.covers import Cover
from ..sdp.solution import EmbeddingSolution
from .frechet import best_cut, frechet_round
from .separated import far_pair_mass, separated_sets
from .wellspread import WellSpreadSet, is_well_spread, wellspread_extract

logger = logging.getLogger(__name__)

COVERED_MASS = 1.0 / 32.0
SEPARATION_DELTA = 1.0 / 128.0


def check_cover_diameter(cover: Cover, d2: DistanceMatrix, limit: float) -> None:
    """Raise InvalidArgumentError when a cover set is wider than ``limit`` under ``d^2_x``."""
    for i, s in enumerate(cover.sets):
        if s and diameter(s, d2) > limit + 1e-9:
            raise InvalidArgumentError(f"cover set {i} has diameter {diameter(s, d2):.4g} above {limit}",
                                       {"set": i, "limit": limit})


def split_by_cover(W: VertexSet, cover: Cover) -> List[VertexSet]:
    """``W & T_i`` made disjoint by assigning each vertex to the first set holding it; empty parts dropped."""
    parts: List[VertexSet] = []
    taken: set = set()
    for T in cover.sets:
        part = frozenset(v for v in W & T if v not in taken)
        taken |= part
        if part:
            parts.append(part)
    return parts


def covered_well_spread(W: WellSpreadSet, cover: Cover, d2: DistanceMatrix) -> WellSpreadSet:
    """Restrict W to the cover and check it is still (4, 1/32)-well spread.

    Raises:
        ExtractionFailureError: if the restriction fails the check.
    """
    parts = split_by_cover(W.A, cover)
    A = frozenset().union(*parts) if parts else frozenset()
    restricted = WellSpreadSet(A=A, alpha_diam=W.alpha_diam, beta_mass=COVERED_MASS, sub_cover=tuple(parts),
                               centers=tuple(min(p) for p in parts), center=W.center)
    if not parts or not restricted.verify(d2):
        raise ExtractionFailureError(
            "well-spread set restricted to the cover is not (4, 1/32)-well spread",
            {"W": len(W.A), "A": len(A), "parts": len(parts)},
        )
    return restricted


def _sweep_candidates(G: Graph, d2: DistanceMatrix, candidates: List[Tuple[str, VertexSet]], seed: int) -> Cut | None:
    best = None
    for label, U in candidates:
        try:
            cut = frechet_round(G, d2, U, method="round-arv", seed=seed)
        except DegenerateInputError:
            continue
        cut.trace["candidate"] = label
        best = best_cut(best, cut)
    return best


def round_arv(G: Graph, sol: EmbeddingSolution, cover: Cover, seed: int, config: Config | None = None) -> Cut:
    """Cut from an ARV solution plus a low-diameter cover of it.

    Raises:
        InvalidArgumentError: if a cover set is wider than ``ARV_COVER_DIAMETER``.
        ExtractionFailureError: if no well-spread set survives the cover.
    """
    config = config or Config()
    d2 = pairwise_squared(sol)
    check_cover_diameter(cover, d2, config.arv_cover_diameter)

    extracted = wellspread_extract(G, sol, kappa=config.kappa)
    if isinstance(extracted, Cut):
        extracted.trace["branch"] = "wellspread-cut"
        return Cut(S=extracted.S, expansion=extracted.expansion, cut_edges=extracted.cut_edges,
                   method="round-arv", seed=seed, trace=extracted.trace)

    A = covered_well_spread(extracted, cover, d2)
    centers = list(A.centers)
    weights = {c: len(p) for c, p in zip(centers, A.sub_cover)}
    trace: Dict[str, Any] = {"branch": "separated", "well_spread": A.to_dict(), "weights": weights}

    candidates: List[Tuple[str, VertexSet]] = []
    if far_pair_mass(centers, weights, d2, SEPARATION_DELTA) > 0:
        U, score = separated_sets(centers, weights, d2, SEPARATION_DELTA, seed,
                                  exhaustive_max=config.separated_exhaustive_max,
                                  projections=config.separated_projections, thresholds=config.separated_thresholds)
        expanded = frozenset().union(*(p for c, p in zip(centers, A.sub_cover) if c in U))
        candidates += [("separated", U), ("separated-expanded", expanded)]
        trace.update({"separated_set": sorted(U), "separation_score": score})
    else:
        logger.info("round_arv: representatives are not separated; sweeping around each part")
        trace["separation_score"] = 0.0
    candidates += [(f"part-{c}", p) for c, p in zip(centers, A.sub_cover)]

    best = _sweep_candidates(G, d2, candidates, seed)
    if best is None:
        raise ExtractionFailureError("every Frechet map built from the cover was constant", {"parts": len(centers)})
    best.trace.update(trace)
    logger.info(f"round_arv: expansion {float(best.expansion):.4g} from candidate {best.trace['candidate']}")
    return best
