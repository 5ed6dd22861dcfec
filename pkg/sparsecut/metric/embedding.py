"""Frechet embedding of a negative-type metric into l2.

Coordinates are ``d^2_x(v, A)`` for random subsets A that include each vertex
with probability ``2^-j``, ``j = 1..ceil(log2 n)``, repeated ``ceil(log2 n)``
times, followed by the n singleton coordinates ``d^2_x(v, a)``. Each coordinate
is 1-Lipschitz under ``d^2_x``, and the singletons keep ``d_y >= d^2_x`` before
scaling, so the stretch is at most the square root of the coordinate count.
After a global rescale ``d^2_x <= d_y`` holds on every pair and the stretch is
measured.
"""

import logging
import math
from typing import List, Tuple

import numpy as np

from ..errors import DegenerateInputError, InvalidArgumentError
from ..sdp.solution import EmbeddingSolution
from ..utils.enum import SolutionKind
from ..utils.seeds import rng_for
from .distance import pairwise_squared, squared_distances, triangle_violation

logger = logging.getLogger(__name__)

NEGATIVE_TYPE_TOL = 1e-4


def frechet_coordinates(d: np.ndarray, seed: int, repetitions: int | None = None) -> np.ndarray:
    """Columns ``min_{a in A} d(v, a)`` for the random subsets described above, then ``d(v, a)`` for every a."""
    n = d.shape[0]
    scales = max(1, math.ceil(math.log2(n)))
    repetitions = repetitions or scales
    rng = rng_for(seed)
    columns: List[np.ndarray] = []
    for j in range(1, scales + 1):
        for _ in range(repetitions):
            members = np.flatnonzero(rng.random(n) < 2.0 ** -j)
            if members.size == 0:
                continue
            columns.append(np.min(d[:, members], axis=1))
    columns.extend(d[:, a] for a in range(n))
    return np.column_stack(columns)


def embed_l22_to_l2(sol: EmbeddingSolution, seed: int = 0, repetitions: int | None = None,
                    tol: float = NEGATIVE_TYPE_TOL,
                    zero_tol: float | None = None) -> Tuple[EmbeddingSolution, float]:
    """Vectors y with ``d^2_x(u, v) <= ||y_u - y_v||`` and measured stretch.

    Pairs with ``d^2_x <= zero_tol`` count as coincident; ``zero_tol`` defaults
    to the solution's ``tol`` so solver noise does not enter the stretch.

    Returns:
        The embedded solution (objective copied from ``sol``) and the
        distortion ``max d_y / d^2_x`` over pairs with ``d^2_x > zero_tol``.

    Raises:
        InvalidArgumentError: if ``d^2_x`` violates the triangle inequality
            by more than ``tol``.
        DegenerateInputError: if a separated pair still has ``d_y = 0``.
    """
    d2 = pairwise_squared(sol)
    violation = triangle_violation(d2)
    if violation > tol:
        raise InvalidArgumentError("solution is not of negative type", {"triangle_violation": violation})

    if zero_tol is None:
        zero_tol = float(sol.tolerances.get("tol", 0.0))
    n = sol.n
    d = d2.values
    iu = np.triu_indices(n, k=1)
    positive = d[iu] > zero_tol
    if not positive.any():
        logger.debug("All points coincide; returning the zero embedding")
        return EmbeddingSolution(np.zeros((n, 1)), sol.objective, SolutionKind.Embedded,
                                 {**sol.tolerances, "zero_tol": zero_tol}), 1.0

    y = frechet_coordinates(d, seed, repetitions)
    d_y = np.sqrt(squared_distances(y))

    ratios = d_y[iu][positive] / d[iu][positive]
    if float(ratios.min()) <= 0:
        raise DegenerateInputError("Frechet coordinates collapse a separated pair",
                                   {"zero_tol": zero_tol, "min_ratio": float(ratios.min())})
    scale = 1.0 / float(ratios.min())
    distortion = float(ratios.max() / ratios.min())
    embedded = EmbeddingSolution(y * scale, sol.objective, SolutionKind.Embedded,
                                 {**sol.tolerances, "frechet_coordinates": float(y.shape[1]),
                                  "zero_tol": zero_tol})
    logger.debug(f"Frechet embedding: {y.shape[1]} coordinates, distortion {distortion:.3f}")
    return embedded, distortion
