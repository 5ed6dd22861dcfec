"""Low-diameter covers under an order-k expansion hypothesis.

Pipeline: Frechet embedding of ``d^2_x`` into l2 (vectors y with
``d^2_x <= d_y``), Gaussian reduction of y to z, a ball-carving partition of z
at ``delta/4``. When the 2k largest blocks hold ``(1 - eps/2) n`` vertices
they are moved back to ``d_y``, whose diameters bound those under ``d^2_x``.
Otherwise the blocks are merged by size into 2k groups and the k groups of
smallest expansion form the certificate.
"""

import logging
import math
from typing import Any, Dict, List

from ..config import Config
from ..errors import InvalidArgumentError
from ..graph.graph import Graph, VertexSet, expansion
from ..metric.distance import energy, pairwise_euclidean, pairwise_squared
from ..metric.embedding import embed_l22_to_l2
from ..metric.reduction import gaussian_dim_reduce
from ..oracle.verify import cover_report
from ..partition.covers import Certificate, Cover, cover_transfer, merge_groups
from ..partition.random_partition import lipschitz_partition
from ..sdp.feasibility import is_negative_type
from ..sdp.solution import EmbeddingSolution
from ..utils.enum import Branch
from ..utils.seeds import derive_seeds
from .lambda_cover import check_structure_args, coincident_outcome
from .outcome import StructureOutcome

logger = logging.getLogger(__name__)


def _certificate_sets(G: Graph, groups: List[VertexSet], k: int) -> List[VertexSet]:
    """The k proper groups of smallest expansion, topped up with singletons outside them."""
    proper = [s for s in groups if 0 < len(s) < G.n]
    proper.sort(key=lambda s: (expansion(G, s), len(s), sorted(s)))
    chosen = proper[:k]
    used = frozenset().union(*chosen) if chosen else frozenset()
    free = [v for v in range(G.n) if v not in used]
    while len(chosen) < k and free:
        chosen.append(frozenset([free.pop(0)]))
    if len(chosen) < k:
        chosen = [frozenset([v]) for v in range(k)]
    return chosen


def cover_via_phi(G: Graph, sol: EmbeddingSolution, k: int, eps: float, delta: float, seed: int,
                  config: Config | None = None) -> StructureOutcome:
    """2k sets of ``d^2_x``-diameter delta covering ``(1-eps) n`` vertices, or an expansion certificate.

    Raises:
        InvalidArgumentError: if ``sol`` is not of negative type or parameters are out of range.
        RandomnessFailureError: if dimension reduction exhausts its retries.
    """
    config = config or Config()
    check_structure_args(sol, k, eps, delta)
    trivial = coincident_outcome(sol, "phi")
    if trivial is not None:
        return trivial
    if not is_negative_type(sol, config.sdp_tol):
        raise InvalidArgumentError("solution is not of negative type")

    n = G.n
    embed_seed, reduce_seed, partition_seed = derive_seeds(seed, 3, stream=20)
    y, distortion = embed_l22_to_l2(sol, seed=embed_seed, tol=config.sdp_tol)
    distortion_bound = config.embedding_distortion_c * math.log(max(n, 2))
    if distortion > distortion_bound:
        logger.warning(f"phi pipeline: embedding distortion {distortion:.3g} exceeds {distortion_bound:.3g}")
    budget = eps ** 3 * n * n / (512.0 * k * k)
    reduction = gaussian_dim_reduce(G, y, min(eps, 0.5), reduce_seed, pair_budget=budget,
                                    h=config.dim_reduce_h, max_attempts=config.dim_reduce_retries)
    z = reduction.solution
    d_z, d_y, d2_x = pairwise_euclidean(z), pairwise_euclidean(y), pairwise_squared(sol)

    P = lipschitz_partition(z, delta / 4.0, partition_seed, estimate_trials=config.lipschitz_estimate_trials)
    lipschitz = P.parameter
    blocks = sorted(P.blocks, key=lambda b: (-len(b), min(b)))
    sizes = [len(b) for b in blocks]
    top = sum(sizes[:2 * k])
    energy_d_z = energy(G, d_z)

    trace: Dict[str, Any] = {
        "pipeline": "phi",
        "seed": seed,
        "embedding_distortion": distortion,
        "embedding_distortion_bound": distortion_bound,
        "embedding_distortion_ok": bool(distortion <= distortion_bound),
        "embedding_coordinates": y.m,
        "reduction": reduction.trace(),
        "partition": {**P.metadata, "scheme": P.scheme, "delta": delta / 4.0, "lipschitz": lipschitz,
                      "blocks": len(P.blocks)},
        "block_sizes": sizes,
        "top_coverage": top,
        "pair_budget": budget,
        "energy_d2_x": energy(G, d2_x),
        "energy_d_y": energy(G, d_y),
        "energy_d_z": energy_d_z,
    }
    logger.info(f"phi pipeline: distortion={distortion:.3g}, h={reduction.h}, L={lipschitz}, "
                f"top-{2 * k} blocks hold {top}/{n}")

    if top >= (1.0 - eps / 2.0) * n:
        transferred = cover_transfer(blocks[:2 * k], d_z, d_y, delta / 4.0, eps / 2.0)
        sets = list(transferred.sets) + [frozenset()] * (2 * k - len(transferred.sets))
        cover = Cover.build(sets, d2_x, d2_x.kind.value)
        report = cover_report(cover, d2_x, delta, eps)
        trace["transfer"] = {**report, "d_y_diameters": list(transferred.diameters)}
        if report["pass"]:
            logger.info(f"phi pipeline: cover branch, {cover.covered_count}/{n} covered")
            return StructureOutcome(branch=Branch.Cover, cover=cover, trace=trace)
        logger.info("phi pipeline: transferred cover failed verification; building a certificate")

    groups = merge_groups(sizes, 2 * k)
    merged = [frozenset().union(*(blocks[i] for i in g)) for g in groups]
    chosen = _certificate_sets(G, merged, k)
    trace["merged_sizes"] = [len(s) for s in merged]
    trace["certificate_bound"] = 16.0 * lipschitz * energy_d_z / (eps * delta) if lipschitz is not None else None
    certificate = Certificate.expansion(G, chosen, lipschitz=lipschitz)
    logger.info(f"phi pipeline: certificate branch, max expansion {certificate.max_value:.4g}")
    return StructureOutcome(branch=Branch.Certificate, certificate=certificate, trace=trace)
