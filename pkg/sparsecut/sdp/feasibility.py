"""Exhaustive constraint checks for vector solutions."""

from ..metric.distance import pair_sum, pairwise_squared, triangle_violation
from .solution import EmbeddingSolution, FeasibilityReport


def check_feasibility(sol: EmbeddingSolution, tol: float) -> FeasibilityReport:
    """O(n^3) triangle scan on ``d^2_x`` plus the normalization residual.

    The normalization residual is relative: ``|sum_{u<v} d^2_x - n^2| / n^2``.
    """
    d2 = pairwise_squared(sol)
    n = sol.n
    residual = abs(pair_sum(d2) - n * n) / (n * n)
    return FeasibilityReport(
        max_triangle_violation=triangle_violation(d2),
        normalization_residual=residual,
        objective=sol.objective,
        tol=tol,
        min_gram_eigenvalue=float(sol.tolerances.get("min_gram_eigenvalue", 0.0)),
    )


def is_negative_type(sol: EmbeddingSolution, tol: float) -> bool:
    """True when squared distances satisfy the triangle inequality within ``tol``."""
    return triangle_violation(pairwise_squared(sol)) <= tol
