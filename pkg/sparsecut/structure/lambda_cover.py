"""Low-diameter covers under a spectral hypothesis.

Pipeline: Gaussian reduction of x to z, a padded partition of z at
``delta' = sqrt(delta/4)``, blocks ordered by interior size. When the 2k
blocks with the largest interiors hold ``(1 - eps/2) n`` interior vertices
they are moved back to ``d^2_x`` and returned as a cover once verified.
Otherwise the blocks are merged into 2k groups and bump functions around the
merged interiors give k disjointly supported functions of small Rayleigh
quotient.
"""

import logging
import math
from typing import Any, Dict, List

import numpy as np

from ..config import Config
from ..errors import InvalidArgumentError
from ..graph.graph import Graph, VertexSet, rayleigh
from ..metric.distance import energy, pairwise_euclidean, pairwise_squared
from ..metric.reduction import gaussian_dim_reduce
from ..oracle.verify import cover_report
from ..partition.covers import Certificate, Cover, bump_functions, cover_transfer, merge_groups
from ..partition.random_partition import interior, padded_partition
from ..sdp.feasibility import check_feasibility
from ..sdp.solution import EmbeddingSolution
from ..utils.enum import Branch
from ..utils.seeds import derive_seeds
from .outcome import StructureOutcome

logger = logging.getLogger(__name__)


def check_structure_args(sol: EmbeddingSolution, k: int, eps: float, delta: float) -> None:
    if not 1 <= k <= sol.n:
        raise InvalidArgumentError(f"k must lie in 1..{sol.n}, got k={k}")
    if not 0 < eps < 1:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps}")
    if not 0 < delta < 1:
        raise InvalidArgumentError(f"delta must lie in (0, 1), got {delta}")


def coincident_outcome(sol: EmbeddingSolution, pipeline: str) -> StructureOutcome | None:
    """A one-set cover of diameter 0 when every vector is the same point."""
    d2 = pairwise_squared(sol)
    if np.any(d2.values > 0):
        return None
    logger.info("All vectors coincide; returning the trivial cover")
    cover = Cover.build([range(sol.n)], d2, d2.kind.value)
    return StructureOutcome(branch=Branch.Cover, cover=cover, trace={"pipeline": pipeline, "trivial": True})


def fallback_functions(G: Graph, k: int, taken: List[np.ndarray]) -> List[np.ndarray]:
    """Top up to k disjointly supported functions with vertex indicators outside existing supports."""
    used = set()
    for f in taken:
        used |= set(int(v) for v in np.flatnonzero(f))
    free = [v for v in range(G.n) if v not in used]
    out = list(taken)
    while len(out) < k and free:
        out.append(G.indicator([free.pop(0)]))
    if len(out) < k:
        # Supports exhaust V; fall back to k singletons.
        out = [G.indicator([v]) for v in range(k)]
    return out


def cover_via_lambda(G: Graph, sol: EmbeddingSolution, k: int, eps: float, delta: float, seed: int,
                     config: Config | None = None) -> StructureOutcome:
    """2k sets of ``d^2_x``-diameter delta covering ``(1-eps) n`` vertices, or a spectral certificate.

    Raises:
        InvalidArgumentError: on infeasible ``sol`` or parameters out of range.
        RandomnessFailureError: if dimension reduction exhausts its retries.
    """
    config = config or Config()
    check_structure_args(sol, k, eps, delta)
    trivial = coincident_outcome(sol, "lambda")
    if trivial is not None:
        return trivial
    feasibility = check_feasibility(sol, config.sdp_tol)
    if not feasibility.passed:
        raise InvalidArgumentError("solution is not feasible for the ARV relaxation", feasibility.to_dict())

    n = G.n
    reduce_seed, partition_seed = derive_seeds(seed, 2, stream=10)
    budget = eps ** 3 * n * n / (512.0 * k * k)
    reduction = gaussian_dim_reduce(G, sol, min(eps, 0.5), reduce_seed, pair_budget=budget,
                                    h=config.dim_reduce_h, max_attempts=config.dim_reduce_retries)
    z = reduction.solution
    d_z = pairwise_euclidean(z)
    d2_z, d2_x = pairwise_squared(z), pairwise_squared(sol)

    delta_p = math.sqrt(delta / 4.0)
    P = padded_partition(z, delta_p, eps, partition_seed, scheme=config.partition_scheme)
    alpha = float(P.parameter)
    rho = delta_p / alpha
    interiors = {block: interior(P, block, rho, d_z) for block in P.blocks}
    blocks = sorted(P.blocks, key=lambda b: (-len(interiors[b]), min(b)))
    sizes = [len(interiors[b]) for b in blocks]
    top_interior = sum(sizes[:2 * k])

    trace: Dict[str, Any] = {
        "pipeline": "lambda",
        "seed": seed,
        "reduction": reduction.trace(),
        "partition": {**P.metadata, "scheme": P.scheme, "delta": delta_p, "alpha": alpha, "rho": rho,
                      "blocks": len(P.blocks)},
        "interior_sizes": sizes,
        "top_interior": top_interior,
        "pair_budget": budget,
        "energy_d2_x": energy(G, d2_x),
        "energy_d2_z": energy(G, d2_z),
    }
    logger.info(f"lambda pipeline: h={reduction.h}, alpha={alpha:.3g}, {len(blocks)} blocks, "
                f"top-{2 * k} interiors hold {top_interior}/{n}")

    if top_interior >= (1.0 - eps / 2.0) * n:
        transferred = cover_transfer(blocks[:2 * k], d2_z, d2_x, delta / 4.0, eps / 2.0)
        cover = Cover.build(list(transferred.sets) + [frozenset()] * (2 * k - len(transferred.sets)),
                            d2_x, d2_x.kind.value)
        report = cover_report(cover, d2_x, delta, eps)
        trace["transfer"] = report
        if report["pass"]:
            logger.info(f"lambda pipeline: cover branch, {cover.covered_count}/{n} covered")
            return StructureOutcome(branch=Branch.Cover, cover=cover, trace=trace)
        logger.info("lambda pipeline: transferred cover failed verification; building a certificate")

    groups = merge_groups(sizes, 2 * k)
    merged: List[VertexSet] = [frozenset().union(*(blocks[i] for i in g)) for g in groups]
    merged_interiors = [frozenset().union(*(interiors[blocks[i]] for i in g)) for g in groups]
    functions: List[np.ndarray] = []
    with_interior = [j for j in range(len(merged)) if merged_interiors[j]]
    if with_interior:
        functions = bump_functions([merged[j] for j in with_interior], [merged_interiors[j] for j in with_interior],
                                   alpha, delta_p, d_z)
    functions += [G.indicator(merged[j]) for j in range(len(merged)) if merged[j] and not merged_interiors[j]]
    functions = [f for f in functions if np.any(f)]
    functions.sort(key=lambda f: rayleigh(G, f))
    chosen = fallback_functions(G, k, functions[:k])
    trace["merged_interior_sizes"] = [len(s) for s in merged_interiors]
    trace["certificate_bound"] = 64.0 * alpha ** 2 * trace["energy_d2_z"] / ((eps / 2.0) * delta_p ** 2)
    certificate = Certificate.spectral(G, chosen, alpha=alpha, delta=delta_p)
    logger.info(f"lambda pipeline: certificate branch, max Rayleigh quotient {certificate.max_value:.4g}")
    return StructureOutcome(branch=Branch.Certificate, certificate=certificate, trace=trace)
