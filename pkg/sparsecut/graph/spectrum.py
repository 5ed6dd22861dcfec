"""Spectrum of the normalized Laplacian and spectral diagnostics."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy import linalg

from ..errors import InvalidArgumentError, ResourceLimitError
from .graph import Cut, Graph, check_disjoint_supports, make_cut, rayleigh

logger = logging.getLogger(__name__)

DEFAULT_EIGEN_TOL = 1e-9
DEFAULT_SPECTRUM_MAX_N = 512


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of ``I - A/r`` in ascending order.

    Attributes:
        eigenvalues: ``lambda_1 <= ... <= lambda_n``.
        eigenvectors: Column i belongs to eigenvalue i, or None.
        max_residual: Largest ``||L v - lambda v||`` over the returned pairs.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    max_residual: float = 0.0

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        if self.eigenvectors is not None:
            self.eigenvectors.setflags(write=False)

    def lambda_k(self, k: int) -> float:
        """The k-th smallest eigenvalue, 1-indexed."""
        if not 1 <= k <= len(self.eigenvalues):
            raise InvalidArgumentError(f"k={k} outside 1..{len(self.eigenvalues)}")
        return float(self.eigenvalues[k - 1])

    def prefix(self, count: int) -> List[float]:
        return [float(x) for x in self.eigenvalues[:count]]


def laplacian_spectrum(G: Graph, tol: float = DEFAULT_EIGEN_TOL, max_n: int = DEFAULT_SPECTRUM_MAX_N,
                       with_vectors: bool = True) -> Spectrum:
    """All eigenvalues of the normalized Laplacian via a dense symmetric solver."""
    if G.n > max_n:
        raise ResourceLimitError(f"n={G.n} exceeds the dense eigensolver cap {max_n}", {"n": G.n, "cap": max_n})
    L = G.normalized_laplacian
    values, vectors = linalg.eigh(L)
    residual = float(np.max(np.linalg.norm(L @ vectors - vectors * values, axis=0)))
    if residual > tol:
        logger.warning(f"Eigen-residual {residual:.3e} above tolerance {tol:.1e} for n={G.n}")
    # Clamp round-off outside the theoretical range [0, 2].
    values = np.clip(values, 0.0, 2.0)
    return Spectrum(eigenvalues=values, eigenvectors=vectors if with_vectors else None, max_residual=residual)


@dataclass
class FactLambdaReport:
    """Outcome of checking ``lambda_k <= 2 max_i R(f_i)``."""
    k: int
    lambda_k: float
    rayleigh_quotients: List[float]
    bound: float
    holds: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "lambda_k": self.lambda_k,
            "rayleigh_quotients": self.rayleigh_quotients,
            "bound": self.bound,
            "holds": self.holds,
        }


def check_fact_lambda(G: Graph, fs: Sequence[Sequence[float]], tol: float = DEFAULT_EIGEN_TOL,
                      spectrum: Spectrum | None = None) -> FactLambdaReport:
    """Compare lambda_k with twice the largest Rayleigh quotient of k disjointly supported functions.

    Raises:
        InvalidArgumentError: if supports overlap or a function is zero.
    """
    if not fs:
        raise InvalidArgumentError("need at least one function")
    check_disjoint_supports(fs)
    spectrum = spectrum or laplacian_spectrum(G, tol=tol, with_vectors=False)
    k = len(fs)
    quotients = [rayleigh(G, f) for f in fs]
    bound = 2.0 * max(quotients)
    lam = spectrum.lambda_k(k)
    return FactLambdaReport(k=k, lambda_k=lam, rayleigh_quotients=quotients, bound=bound, holds=lam <= bound + tol)


def threshold_rank(G: Graph, tau: float, spectrum: Spectrum | None = None) -> int:
    """Number of normalized Laplacian eigenvalues strictly below ``tau``."""
    spectrum = spectrum or laplacian_spectrum(G, with_vectors=False)
    return int(np.count_nonzero(spectrum.eigenvalues < tau))


def spectral_sweep(G: Graph, spectrum: Spectrum | None = None) -> Cut:
    """Cheeger sweep over the second eigenvector.

    The trace records the Cheeger interval ``lambda_2/2 <= phi(G) <= sqrt(2 lambda_2)``.
    """
    spectrum = spectrum if spectrum is not None and spectrum.eigenvectors is not None else laplacian_spectrum(G)
    fiedler = spectrum.eigenvectors[:, 1]
    order = sorted(range(G.n), key=lambda v: (fiedler[v], v))
    best: Cut | None = None
    for t in range(1, G.n):
        if fiedler[order[t - 1]] == fiedler[order[t]]:
            continue
        candidate = make_cut(G, order[:t], method="spectral-sweep")
        if best is None or (candidate.expansion, len(candidate.S), sorted(candidate.S)) < (
                best.expansion, len(best.S), sorted(best.S)):
            best = candidate
    if best is None:
        # Constant eigenvector can only happen for numerically degenerate input; fall back to a vertex.
        best = make_cut(G, [0], method="spectral-sweep")
    lam2 = spectrum.lambda_k(2)
    best.trace.update({"lambda_2": lam2, "cheeger_lower": lam2 / 2.0, "cheeger_upper": math.sqrt(2.0 * lam2)})
    return best
