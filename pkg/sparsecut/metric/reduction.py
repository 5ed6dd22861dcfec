"""Gaussian dimension reduction with verify-and-retry.

``Gamma(x) = h^{-1/2} (<g_1, x>, ..., <g_h, x>)`` for i.i.d. standard Gaussian
``g_i``. A single draw meets the three checks below with constant
probability, so draws are repeated with derived seeds until all hold:

* ``E(d_z) <= 4 E(d_x)``
* ``E(d^2_z) <= 4 E(d^2_x)``
* at most ``budget`` unordered pairs have ``d^2_x > 2 d^2_z``
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterator

import numpy as np

from ..errors import InvalidArgumentError, RandomnessFailureError
from ..graph.graph import Graph
from ..sdp.solution import EmbeddingSolution
from ..utils.enum import SolutionKind
from ..utils.seeds import derive_seed, rng_for
from .distance import DistortionReport, distorted_pairs, energy, pairwise_euclidean, pairwise_squared

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 64
_ENERGY_SLACK = 1e-12


def target_dimension(eps: float) -> int:
    """``h = ceil(48 ln(8/eps))``."""
    if not 0 < eps <= 0.5:
        raise InvalidArgumentError(f"eps must lie in (0, 1/2], got {eps}")
    return int(math.ceil(48.0 * math.log(8.0 / eps)))


def gaussian_projection(vectors: np.ndarray, h: int, seed: int) -> np.ndarray:
    """Apply one random ``Gamma_{m,h}`` to every row of ``vectors``."""
    x = np.asarray(vectors, dtype=float)
    g = rng_for(seed).standard_normal((x.shape[1], h))
    return x @ g / math.sqrt(h)


@dataclass(frozen=True)
class ReductionResult:
    """Accepted projection with the quantities that were verified.

    Unpacks as ``(solution, distortion)``.
    """
    solution: EmbeddingSolution
    distortion: DistortionReport
    attempts: int
    h: int
    seed: int
    energy_linear: tuple
    energy_squared: tuple

    def __iter__(self) -> Iterator[Any]:
        yield self.solution
        yield self.distortion

    def trace(self) -> Dict[str, Any]:
        return {
            "h": self.h,
            "attempts": self.attempts,
            "accepted_seed": self.seed,
            "energy_d_x": self.energy_linear[0],
            "energy_d_z": self.energy_linear[1],
            "energy_d2_x": self.energy_squared[0],
            "energy_d2_z": self.energy_squared[1],
            "distortion": self.distortion.to_dict(),
        }


def gaussian_dim_reduce(G: Graph, sol: EmbeddingSolution, eps: float, seed: int,
                        pair_budget: float | None = None, h: int | None = None,
                        max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> ReductionResult:
    """Project ``sol`` to ``h`` dimensions so that all three checks hold.

    Args:
        G: Graph whose edges define the energies.
        sol: Source vectors.
        eps: Accuracy parameter in (0, 1/2]; fixes h unless ``h`` is given.
        seed: Parent seed; attempt i uses ``derive_seed(seed, i)``.
        pair_budget: Allowed number of distorted pairs, default ``eps * n^2``.
        h: Target dimension override.
        max_attempts: Retry cap.

    Raises:
        RandomnessFailureError: if no attempt passes within ``max_attempts``.
    """
    h = target_dimension(eps) if h is None else h
    if h < 1:
        raise InvalidArgumentError(f"target dimension must be positive, got {h}")
    n = sol.n
    budget = eps * n * n if pair_budget is None else pair_budget
    d_x, d2_x = pairwise_euclidean(sol), pairwise_squared(sol)
    e_x, e2_x = energy(G, d_x), energy(G, d2_x)

    failures = {"energy_linear": 0, "energy_squared": 0, "distorted_pairs": 0}
    for attempt in range(max_attempts):
        attempt_seed = derive_seed(seed, attempt)
        candidate = EmbeddingSolution(
            vectors=gaussian_projection(sol.vectors, h, attempt_seed),
            objective=sol.objective,
            kind=SolutionKind.Reduced,
            tolerances=dict(sol.tolerances),
        )
        d_z, d2_z = pairwise_euclidean(candidate), pairwise_squared(candidate)
        e_z, e2_z = energy(G, d_z), energy(G, d2_z)
        report = distorted_pairs(d2_z, d2_x, 2.0, threshold=budget)
        ok_linear = e_z <= 4.0 * e_x + _ENERGY_SLACK
        ok_squared = e2_z <= 4.0 * e2_x + _ENERGY_SLACK
        failures["energy_linear"] += not ok_linear
        failures["energy_squared"] += not ok_squared
        failures["distorted_pairs"] += not report.within_budget
        if ok_linear and ok_squared and report.within_budget:
            logger.debug(f"Dimension reduction to h={h} accepted after {attempt + 1} attempt(s)")
            return ReductionResult(solution=candidate, distortion=report, attempts=attempt + 1, h=h,
                                   seed=attempt_seed, energy_linear=(e_x, e_z), energy_squared=(e2_x, e2_z))
        logger.debug(f"Dimension reduction attempt {attempt + 1} rejected: {failures}")

    logger.warning(f"Dimension reduction failed {max_attempts} times: {failures}")
    raise RandomnessFailureError(
        f"no Gaussian projection passed the checks in {max_attempts} attempts",
        {"h": h, "budget": budget, "failures": failures},
    )


def single_attempt_passes(G: Graph, sol: EmbeddingSolution, eps: float, seed: int,
                          pair_budget: float | None = None, h: int | None = None) -> bool:
    """Whether the first projection drawn from ``seed`` passes all checks."""
    try:
        gaussian_dim_reduce(G, sol, eps, seed, pair_budget=pair_budget, h=h, max_attempts=1)
    except RandomnessFailureError:
        return False
    return True
