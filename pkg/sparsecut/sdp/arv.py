"""The ARV relaxation and its integral solutions.

    minimise   (1/2rn) sum_E ||x_u - x_v||^2
    subject to sum_{u<v} ||x_u - x_v||^2 = n^2
               ||x_u - x_v||^2 <= ||x_u - x_w||^2 + ||x_w - x_v||^2

The program is posed over the Gram matrix ``X = [<x_u, x_v>]`` with cvxpy;
vectors are recovered from its eigendecomposition.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, Tuple

import cvxpy as cp
import numpy as np

from ..errors import InvalidArgumentError, ResourceLimitError, SolverFailureError
from ..graph.graph import Graph, cut_edges
from ..metric.distance import energy, pair_sum, pairwise_squared, squared_distances
from ..utils.enum import SolutionKind
from .feasibility import check_feasibility
from .solution import EmbeddingSolution

logger = logging.getLogger(__name__)

DEFAULT_SDP_MAX_N = 40
DEFAULT_TOL = 1e-4
EIGEN_CUTOFF = 1e-9
_ACCEPTED_STATUSES = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)


class PairIndex:
    """Index of unordered pairs ``u < v`` into a flat vector, plus the triangle triples."""

    def __init__(self, n: int):
        self.n = n
        self.iu, self.ju = np.triu_indices(n, k=1)
        self.index = np.full((n, n), -1, dtype=np.int64)
        self.index[self.iu, self.ju] = np.arange(self.iu.size)
        self.index[self.ju, self.iu] = np.arange(self.iu.size)

    @property
    def size(self) -> int:
        return int(self.iu.size)

    def of(self, u: int, v: int) -> int:
        return int(self.index[u, v])

    def edges(self, G: Graph) -> np.ndarray:
        e = G.edge_array
        return self.index[e[:, 0], e[:, 1]]

    def triangles(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays (a, b, c) encoding ``d[a] <= d[b] + d[c]`` for every pair and third vertex."""
        n = self.n
        u = np.repeat(self.iu, n)
        v = np.repeat(self.ju, n)
        w = np.tile(np.arange(n), self.size)
        keep = (w != u) & (w != v)
        u, v, w = u[keep], v[keep], w[keep]
        return self.index[u, v], self.index[u, w], self.index[w, v]

    def to_matrix(self, values: np.ndarray) -> np.ndarray:
        d = np.zeros((self.n, self.n))
        d[self.iu, self.ju] = values
        d[self.ju, self.iu] = values
        return d


def gram_pair_distances(X: cp.Variable, pairs: PairIndex) -> cp.Expression:
    """``X_uu + X_vv - 2 X_uv`` for every unordered pair, as a cvxpy vector."""
    n = pairs.n
    flat = cp.reshape(X, (n * n,), order="F")
    diag = cp.diag(X)
    return diag[pairs.iu] + diag[pairs.ju] - 2 * flat[pairs.iu * n + pairs.ju]


def solver_options(solver: str, eps: float, max_iters: int) -> Dict[str, Any]:
    if solver.upper() == "SCS":
        return {"eps_abs": eps, "eps_rel": eps, "max_iters": max_iters}
    return {}


def solve_problem(problem: cp.Problem, solver: str, eps: float, max_iters: int, n: int) -> None:
    """Solve in place; raise SolverFailureError unless an (inaccurate) optimum is reported."""
    try:
        problem.solve(solver=solver, **solver_options(solver, eps, max_iters))
    except cp.SolverError as e:
        raise SolverFailureError(f"{solver} failed: {e}", {"solver": solver, "n": n})
    stats = problem.solver_stats
    diagnostics = {
        "solver": solver,
        "status": problem.status,
        "n": n,
        "iterations": getattr(stats, "num_iters", None),
        "solve_time": getattr(stats, "solve_time", None),
    }
    if problem.status not in _ACCEPTED_STATUSES:
        raise SolverFailureError(f"{solver} returned status {problem.status}", diagnostics)
    if problem.status == cp.OPTIMAL_INACCURATE:
        logger.warning(f"{solver} reported an inaccurate optimum for n={n}")


def vectors_from_gram(gram: np.ndarray, cutoff: float = EIGEN_CUTOFF) -> Tuple[np.ndarray, float]:
    """Factor a PSD Gram matrix as ``V V^T``, dropping eigenvalues below ``cutoff``.

    Returns the vectors and the smallest eigenvalue seen.
    """
    gram = (gram + gram.T) / 2.0
    values, vecs = np.linalg.eigh(gram)
    keep = values > cutoff
    if not keep.any():
        return np.zeros((gram.shape[0], 1)), float(values.min())
    return vecs[:, keep] * np.sqrt(values[keep]), float(values.min())


def normalise(vectors: np.ndarray, n: int) -> np.ndarray:
    """Rescale so the unordered pair sum of squared distances is exactly ``n^2``."""
    total = pair_sum(squared_distances(vectors))
    if total <= 0:
        raise SolverFailureError("recovered vectors are all identical", {"pair_sum": total})
    return vectors * np.sqrt(n * n / total)


def solve_arv(G: Graph, tol: float = DEFAULT_TOL, solver: str = "SCS", eps: float = 1e-7,
              max_iters: int = 100000, max_n: int = DEFAULT_SDP_MAX_N) -> EmbeddingSolution:
    """Solve the ARV relaxation of G.

    Raises:
        ResourceLimitError: if ``n`` exceeds ``max_n``.
        SolverFailureError: on non-convergence or residuals above ``tol``.
    """
    n = G.n
    if n > max_n:
        raise ResourceLimitError(f"solve_arv: n={n} exceeds cap {max_n}", {"n": n, "cap": max_n})

    pairs = PairIndex(n)
    X = cp.Variable((n, n), PSD=True)
    d = gram_pair_distances(X, pairs)
    a, b, c = pairs.triangles()
    constraints = [cp.sum(d) == n * n]
    if a.size:
        constraints.append(d[a] <= d[b] + d[c])
    objective = cp.Minimize(cp.sum(d[pairs.edges(G)]) / (2.0 * G.r * n))
    problem = cp.Problem(objective, constraints)
    logger.info(f"Solving ARV relaxation: n={n}, triangle constraints={a.size}")
    solve_problem(problem, solver, eps, max_iters, n)

    vectors, min_eig = vectors_from_gram(X.value)
    vectors = normalise(vectors, n)
    draft = EmbeddingSolution(vectors=vectors, objective=0.0, kind=SolutionKind.ArvOptimal)
    value = energy(G, pairwise_squared(draft))
    solution = EmbeddingSolution(
        vectors=vectors,
        objective=value,
        kind=SolutionKind.ArvOptimal,
        tolerances={"tol": tol, "solver_eps": eps, "min_gram_eigenvalue": min_eig,
                    "solver_objective": float(problem.value)},
    )
    report = check_feasibility(solution, tol)
    if not report.passed:
        raise SolverFailureError("ARV solution violates constraints beyond tolerance", report.to_dict())
    logger.info(f"ARV objective {value:.6f} (solver reported {problem.value:.6f})")
    return solution


def embed_integral_cut(G: Graph, S: Iterable[int]) -> EmbeddingSolution:
    """One-dimensional solution ``x_v = sqrt(n^2/(s(n-s)))`` on S, 0 elsewhere.

    The objective is ``phi(S) * n / (2(n-s))`` computed exactly.
    """
    S = G.vertex_set(S)
    n, s = G.n, len(S)
    if not 0 < s <= n // 2:
        raise InvalidArgumentError(f"integral cut needs 0 < |S| <= n/2, got |S|={s}", {"size": s})
    x = np.zeros((n, 1))
    x[sorted(S), 0] = np.sqrt(n * n / (s * (n - s)))
    objective = Fraction(cut_edges(G, S) * n, 2 * G.r * s * (n - s))
    return EmbeddingSolution(vectors=x, objective=float(objective), kind=SolutionKind.IntegralCut,
                             tolerances={"tol": 0.0})
