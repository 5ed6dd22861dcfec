"""Solution containers for the ARV and Sherali-Adams programs."""

from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from ..utils.enum import SolutionKind


@dataclass(frozen=True)
class EmbeddingSolution:
    """One vector per vertex together with the SDP value it came from.

    Attributes:
        vectors: ``(n, m)`` array; row v is ``x_v``.
        objective: ``(1/2rn) sum_E ||x_u - x_v||^2`` for ARV and integral
            solutions; derived solutions keep the value of their source.
        kind: Provenance tag.
        tolerances: Tolerances the solution was produced or checked with.
    """
    vectors: np.ndarray
    objective: float
    kind: SolutionKind
    tolerances: Dict[str, float] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        x = np.array(self.vectors, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2 or x.shape[0] < 1:
            raise InvalidArgumentError(f"vectors must be an (n, m) array, got shape {x.shape}")
        x.setflags(write=False)
        object.__setattr__(self, "vectors", x)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def m(self) -> int:
        return self.vectors.shape[1]


def pattern_bits(pattern: int, size: int) -> str:
    """Bitstring of a cut pattern; character i is ``b(R[i])``."""
    return "".join("1" if pattern >> i & 1 else "0" for i in range(size))


@dataclass(frozen=True)
class SASolution:
    """Sherali-Adams distance systems for a single representative set R.

    Patterns ``b: R -> {0, 1}`` are integers; bit i of the pattern is the side
    of ``R[i]``.

    Attributes:
        R: The representative vertices, in the order used by the bit encoding.
        p: ``p[b]`` for every pattern, shape ``(2^|R|,)``.
        d: ``d[b]`` is the ``n x n`` matrix ``d^{R,b}``, shape ``(2^|R|, n, n)``.
    """
    R: Tuple[int, ...]
    p: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        d = np.array(self.d, dtype=float)
        patterns = 1 << len(self.R)
        if p.shape != (patterns,) or d.ndim != 3 or d.shape[0] != patterns or d.shape[1] != d.shape[2]:
            raise InvalidArgumentError(
                f"SA solution shapes do not match |R|={len(self.R)}: p {p.shape}, d {d.shape}")
        p.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "R", tuple(int(v) for v in self.R))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[1]

    def side(self, pattern: int, vertex: int) -> int:
        return pattern >> self.R.index(vertex) & 1


@dataclass(frozen=True)
class FeasibilityReport:
    """Residuals of an embedding against the ARV constraints.

    ``passed`` holds iff both residuals are within ``tol``.
    """
    max_triangle_violation: float
    normalization_residual: float
    objective: float
    tol: float
    min_gram_eigenvalue: float = 0.0

    @property
    def passed(self) -> bool:
        return self.max_triangle_violation <= self.tol and self.normalization_residual <= self.tol

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_triangle_violation": self.max_triangle_violation,
            "normalization_residual": self.normalization_residual,
            "objective": self.objective,
            "tol": self.tol,
            "min_gram_eigenvalue": self.min_gram_eigenvalue,
            "pass": self.passed,
        }
