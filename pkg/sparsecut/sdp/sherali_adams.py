"""Sherali-Adams strengthening of the ARV relaxation for one representative set.

For the set R, every cut pattern ``b: R -> {0, 1}`` gets a probability
``p[b]`` and a metric ``d[b]`` with

    sum_b p[b] = 1,  p >= 0
    sum_{u<v} d[b](u, v) = n^2 p[b]
    d[b] satisfies the triangle inequality
    d[b](u, v) = 0 for u, v in R on the same side of b
    sum_b d[b](u, v) = ||x_u - x_v||^2

so ``d[b] / p[b]`` is a metric that is a cut on R and averages to ``d^2_x``.
"""

import logging
from typing import Dict, Iterable, Sequence, Tuple

import cvxpy as cp
import numpy as np

from ..errors import InvalidArgumentError, ResourceLimitError, SamplingFailureError, SolverFailureError
from ..graph.graph import Graph
from ..metric.distance import DistanceMatrix, energy, pair_sum, pairwise_squared, squared_distances, triangle_violation
from ..utils.enum import DistanceKind, SolutionKind
from ..utils.seeds import rng_for
from .arv import DEFAULT_SDP_MAX_N, DEFAULT_TOL, PairIndex, gram_pair_distances, normalise, solve_problem, vectors_from_gram
from .solution import EmbeddingSolution, SASolution

logger = logging.getLogger(__name__)

DEFAULT_MAX_SET = 10
DEFAULT_P_FLOOR = 1e-6


def _same_side_pairs(R: Sequence[int], pattern: int, pairs: PairIndex) -> list[int]:
    out = []
    for i in range(len(R)):
        for j in range(i + 1, len(R)):
            if (pattern >> i & 1) == (pattern >> j & 1):
                out.append(pairs.of(R[i], R[j]))
    return out


def solve_sa_for_set(G: Graph, C: Iterable[int], tol: float = DEFAULT_TOL, solver: str = "SCS",
                     eps: float = 1e-7, max_iters: int = 100000, max_n: int = DEFAULT_SDP_MAX_N,
                     max_set: int = DEFAULT_MAX_SET) -> Tuple[EmbeddingSolution, SASolution]:
    """Jointly optimal ARV vectors and SA distance systems for ``R = C``.

    Raises:
        InvalidArgumentError: if C is empty.
        ResourceLimitError: if ``|C|`` or ``n`` exceeds its cap.
        SolverFailureError: on non-convergence or invariants beyond ``tol``.
    """
    R = tuple(sorted(G.vertex_set(C)))
    n = G.n
    if not R:
        raise InvalidArgumentError("representative set is empty")
    if len(R) > max_set:
        raise ResourceLimitError(f"|C|={len(R)} exceeds cap {max_set}", {"size": len(R), "cap": max_set})
    if n > max_n:
        raise ResourceLimitError(f"solve_sa_for_set: n={n} exceeds cap {max_n}", {"n": n, "cap": max_n})

    pairs = PairIndex(n)
    patterns = 1 << len(R)
    X = cp.Variable((n, n), PSD=True)
    d = gram_pair_distances(X, pairs)
    p = cp.Variable(patterns, nonneg=True)
    D = cp.Variable((patterns, pairs.size), nonneg=True)
    a, b, c = pairs.triangles()

    constraints = [
        cp.sum(d) == n * n,
        cp.sum(p) == 1,
        cp.sum(D, axis=1) == n * n * p,
        cp.sum(D, axis=0) == d,
    ]
    if a.size:
        constraints.append(D[:, a] <= D[:, b] + D[:, c])
    for pattern in range(patterns):
        same = _same_side_pairs(R, pattern, pairs)
        if same:
            constraints.append(D[pattern, same] == 0)

    objective = cp.Minimize(cp.sum(d[pairs.edges(G)]) / (2.0 * G.r * n))
    problem = cp.Problem(objective, constraints)
    logger.info(f"Solving SA relaxation: n={n}, |R|={len(R)}, patterns={patterns}")
    solve_problem(problem, solver, eps, max_iters, n)

    vectors, min_eig = vectors_from_gram(X.value)
    vectors = normalise(vectors, n)
    d2 = DistanceMatrix(squared_distances(vectors), DistanceKind.Squared)
    value = energy(G, d2)
    sol = EmbeddingSolution(vectors=vectors, objective=value, kind=SolutionKind.ArvOptimal,
                            tolerances={"tol": tol, "solver_eps": eps, "min_gram_eigenvalue": min_eig,
                                        "solver_objective": float(problem.value)})

    p_value = np.clip(np.asarray(p.value, dtype=float), 0.0, None)
    p_value = p_value / p_value.sum()
    d_value = np.clip(np.asarray(D.value, dtype=float), 0.0, None)
    sa = SASolution(R=R, p=p_value, d=np.stack([pairs.to_matrix(row) for row in d_value]))

    residuals = sa_residuals(sol, sa)
    if max(residuals.values()) > tol:
        raise SolverFailureError("SA solution violates constraints beyond tolerance", residuals)
    logger.info(f"SA objective {value:.6f}")
    return sol, sa


def sa_residuals(sol: EmbeddingSolution, sa: SASolution) -> Dict[str, float]:
    """Worst violation of each SA invariant; pair sums are relative to ``n^2``."""
    n = sa.n
    d2 = pairwise_squared(sol).values
    pair_sums = np.array([pair_sum(m) for m in sa.d])
    same_side = 0.0
    for pattern in range(len(sa.p)):
        for i in range(len(sa.R)):
            for j in range(i + 1, len(sa.R)):
                if (pattern >> i & 1) == (pattern >> j & 1):
                    same_side = max(same_side, float(sa.d[pattern, sa.R[i], sa.R[j]]))
    return {
        "probability_sum": abs(float(sa.p.sum()) - 1.0),
        "probability_negative": float(max(0.0, -sa.p.min())),
        "pair_sum": float(np.max(np.abs(pair_sums - n * n * sa.p))) / (n * n),
        "triangle": max(triangle_violation(m) for m in sa.d),
        "same_side": same_side,
        "marginal": float(np.max(np.abs(sa.d.sum(axis=0) - d2))),
    }


def integral_sa_witness(sol: EmbeddingSolution, S: Iterable[int], R: Iterable[int]) -> SASolution:
    """The SA solution that puts all mass on the pattern ``b_R(v) = 1{v in S}``.

    ``sol`` must be the integral solution of S so that ``d^2_x`` already
    vanishes between same-side vertices.
    """
    S = frozenset(S)
    R = tuple(sorted(set(R)))
    if not R:
        raise InvalidArgumentError("representative set is empty")
    pattern = sum(1 << i for i, v in enumerate(R) if v in S)
    patterns = 1 << len(R)
    p = np.zeros(patterns)
    p[pattern] = 1.0
    d = np.zeros((patterns, sol.n, sol.n))
    d[pattern] = pairwise_squared(sol).values
    return SASolution(R=R, p=p, d=d)


def sample_pattern(sa: SASolution, seed: int, p_floor: float = DEFAULT_P_FLOOR,
                   tol: float = DEFAULT_TOL) -> Tuple[int, DistanceMatrix]:
    """Draw ``b`` with probability ``p[b]`` and return ``(b, d[b] / p[b])``.

    Patterns with ``p[b] < p_floor`` are never drawn. The result is snapped to
    an exact cut on R and rescaled so its unordered pair sum is exactly ``n^2``.

    Raises:
        InvalidArgumentError: if no pattern has probability at least ``p_floor``.
        SamplingFailureError: if the snapped metric violates the triangle
            inequality by more than ``tol``.
    """
    weights = np.where(sa.p >= p_floor, sa.p, 0.0)
    if weights.sum() <= 0:
        raise InvalidArgumentError("SA solution has no pattern with positive probability")
    weights = weights / weights.sum()
    rng = rng_for(seed)
    pattern = int(rng.choice(len(weights), p=weights))
    values = _snap_cut_on_r(sa.d[pattern] / sa.p[pattern], sa.R, pattern)
    n = sa.n
    total = pair_sum(values)
    if total > 0:
        values = values * (n * n / total)
    D = DistanceMatrix(values, DistanceKind.Sampled)
    violation = triangle_violation(D)
    if violation > tol:
        raise SamplingFailureError(f"sampled metric for pattern {pattern} violates the triangle inequality",
                                   {"pattern": pattern, "p": float(sa.p[pattern]), "triangle_violation": violation})
    return pattern, D


def _snap_cut_on_r(values: np.ndarray, R: Sequence[int], pattern: int) -> np.ndarray:
    """Zero same-side distances on R and equalise the cross distances."""
    values = values.copy()
    sides = [pattern >> i & 1 for i in range(len(R))]
    cross = [(R[i], R[j]) for i in range(len(R)) for j in range(i + 1, len(R)) if sides[i] != sides[j]]
    for i in range(len(R)):
        for j in range(i + 1, len(R)):
            if sides[i] == sides[j]:
                values[R[i], R[j]] = values[R[j], R[i]] = 0.0
    if cross:
        common = float(np.mean([values[u, v] for u, v in cross]))
        for u, v in cross:
            values[u, v] = values[v, u] = common
    return values


def sample_cut_metric(sa: SASolution, seed: int, p_floor: float = DEFAULT_P_FLOOR,
                      tol: float = DEFAULT_TOL) -> DistanceMatrix:
    """The sampled metric ``D = d[b] / p[b]`` for a random pattern b."""
    return sample_pattern(sa, seed, p_floor, tol)[1]
