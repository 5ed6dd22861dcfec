"""Rounding a Sherali-Adams solution through sampled cut metrics.

A cheap ball cut is returned outright. Otherwise the well-spread set W is
restricted to the cover, giving A with parts ``A_i = W & T_i`` whose centre
is the smallest representative in ``T_i``. Each attempt draws a pattern b on
the representatives and the metric ``D = d[b] / p[b]``, which is an exact
cut on R and equals ``d^2_x`` in expectation. A sample is accepted when

* it satisfies the triangle inequality after snapping,
* its edge sum is at most ``SA_EDGE_FACTOR`` times that of ``d^2_x``,
* its pair mass inside A is at least ``n^2 / 64``,
* ``sum_{u in A} D(u, c(u))`` is at most ``SA_CENTER_FACTOR * |A|``,

and is then rounded by sweeping ``D(a_1, .)``.
"""

import logging
from collections import Counter
from typing import Dict, List, Tuple

import numpy as np

from ..config import Config
from ..errors import DegenerateInputError, ExtractionFailureError, InvalidArgumentError, SamplingFailureError
from ..graph.graph import Cut, Graph, VertexSet
from ..metric.distance import DistanceMatrix, pair_sum, pairwise_squared
from ..partition.covers import Cover
from ..sdp.sherali_adams import sample_pattern
from ..sdp.solution import EmbeddingSolution, SASolution, pattern_bits
from ..utils.seeds import derive_seed
from .arv import COVERED_MASS, check_cover_diameter
from .frechet import best_cut, frechet_round
from .wellspread import WellSpreadSet, wellspread_extract

logger = logging.getLogger(__name__)

PAIR_MASS_FRACTION = 1.0 / 64.0
_SLACK = 1e-9


def cover_centers(sa: SASolution, cover: Cover) -> List[int | None]:
    """Smallest representative in each cover set, None for sets without one.

    Raises:
        InvalidArgumentError: if no cover set contains a vertex of R.
    """
    R = set(sa.R)
    centers = [min(T & R) if T & R else None for T in cover.sets]
    if all(c is None for c in centers):
        raise InvalidArgumentError("no cover set contains a representative vertex", {"R": list(sa.R)})
    return centers


def assign_centers(W: VertexSet, cover: Cover, centers: List[int | None]) -> Tuple[List[VertexSet], List[int]]:
    """Disjoint parts ``W & T_i`` of the sets that have a centre, each vertex in its first set."""
    parts, part_centers = [], []
    taken: set = set()
    for T, c in zip(cover.sets, centers):
        part = frozenset(v for v in W & T if v not in taken)
        taken |= part
        if part and c is not None:
            parts.append(part)
            part_centers.append(c)
    return parts, part_centers


def sample_conditions(G: Graph, D: DistanceMatrix, A: VertexSet, center_of: Dict[int, int], edge_limit: float,
                      center_limit: float) -> Dict[str, bool]:
    e = G.edge_array
    n = D.n
    edge_sum = float(np.sum(D.values[e[:, 0], e[:, 1]]))
    center_sum = float(sum(D.values[u, c] for u, c in center_of.items()))
    return {
        "edge_sum": edge_sum <= edge_limit,
        "pair_mass": pair_sum(D, A) >= PAIR_MASS_FRACTION * n * n - _SLACK * n * n,
        "center_sum": center_sum <= center_limit,
    }


def round_sa(G: Graph, sol: EmbeddingSolution, sa: SASolution, cover: Cover, seed: int,
             config: Config | None = None) -> Cut:
    """Best cut over accepted samples of the SA distance systems.

    Stops after ``SA_SUCCESS_TARGET`` accepted samples or ``SA_RETRIES`` draws.

    Raises:
        InvalidArgumentError: on a cover wider than ``SA_COVER_DIAMETER`` or one
            that misses every representative.
        ExtractionFailureError: if no well-spread set survives the cover.
        SamplingFailureError: if no draw is accepted.
    """
    config = config or Config()
    d2 = pairwise_squared(sol)
    check_cover_diameter(cover, d2, config.sa_cover_diameter)
    set_centers = cover_centers(sa, cover)

    extracted = wellspread_extract(G, sol, kappa=config.kappa)
    if isinstance(extracted, Cut):
        extracted.trace["branch"] = "wellspread-cut"
        return Cut(S=extracted.S, expansion=extracted.expansion, cut_edges=extracted.cut_edges,
                   method="round-sa", seed=seed, trace=extracted.trace)

    parts, centers = assign_centers(extracted.A, cover, set_centers)
    A = frozenset().union(*parts) if parts else frozenset()
    well_spread = WellSpreadSet(A=A, alpha_diam=extracted.alpha_diam, beta_mass=COVERED_MASS,
                                sub_cover=tuple(parts), center=extracted.center)
    if not parts or not well_spread.verify(d2):
        raise ExtractionFailureError("the covered part of the well-spread set is not (4, 1/32)-well spread",
                                   {"W": len(extracted.A), "A": len(A), "parts": len(parts)})
    center_of = {u: c for part, c in zip(parts, centers) for u in part}
    a1 = centers[0]

    e = G.edge_array
    n = G.n
    edge_limit = config.sa_edge_factor * float(np.sum(d2.values[e[:, 0], e[:, 1]])) + _SLACK * n * n
    center_limit = config.sa_center_factor * len(A) + _SLACK * n * n

    failures: Counter = Counter()
    accepted: List[str] = []
    best = None
    attempts = 0
    for attempt in range(config.sa_retries):
        attempts = attempt + 1
        attempt_seed = derive_seed(seed, attempt, stream=30)
        try:
            pattern, D = sample_pattern(sa, attempt_seed, config.sa_p_floor, tol=config.sdp_tol)
        except SamplingFailureError:
            failures["triangle"] += 1
            continue
        checks = sample_conditions(G, D, A, center_of, edge_limit, center_limit)
        failures.update(name for name, ok in checks.items() if not ok)
        if not all(checks.values()):
            continue
        try:
            cut = frechet_round(G, D, [a1], method="round-sa", seed=seed)
        except DegenerateInputError:
            failures["degenerate"] += 1
            continue
        cut.trace["pattern"] = pattern_bits(pattern, len(sa.R))
        accepted.append(cut.trace["pattern"])
        best = best_cut(best, cut)
        if len(accepted) >= config.sa_success_target:
            break

    logger.debug(f"round_sa: {len(accepted)} accepted of {attempts} draws, failures {dict(failures)}")
    if best is None:
        logger.warning(f"round_sa: no sample accepted in {attempts} draws: {dict(failures)}")
        raise SamplingFailureError(f"no sampled cut metric met the conditions in {attempts} draws",
                                   {"attempts": attempts, "failures": dict(failures)})
    best.trace.update({
        "branch": "sampled",
        "attempts": attempts,
        "accepted": len(accepted),
        "accepted_patterns": accepted,
        "failures": dict(failures),
        "centers": centers,
        "covered": len(A),
        "center_limit": center_limit,
    })
    logger.info(f"round_sa: expansion {float(best.expansion):.4g} after {attempts} draws")
    return best
