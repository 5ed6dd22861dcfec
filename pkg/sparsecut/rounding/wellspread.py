"""Either a cut of expansion O(sdp) or a verified well-spread set.

The cut side sweeps ``d^2_x(., B(c, 1/4))`` for every centre c. The set side
tests balls ``B(c, 2)`` and then ``B(c, 4)`` directly against the
well-spread definition; whatever is returned has been verified.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Sequence, Tuple

from ..errors import DegenerateInputError, ExtractionFailureError
from ..graph.graph import Cut, Graph, VertexSet
from ..metric.distance import DistanceMatrix, ball, diameter, energy, pair_sum, pairwise_squared
from ..sdp.solution import EmbeddingSolution
from .frechet import best_cut, frechet_round

logger = logging.getLogger(__name__)

DEFAULT_KAPPA = 16.0
WELL_SPREAD_DIAMETER = 4.0
WELL_SPREAD_MASS = 1.0 / 16.0
CUT_BALL_RADIUS = 0.25
CANDIDATE_RADII = (2.0, 4.0)
_TOL = 1e-9


@dataclass(frozen=True)
class WellSpreadSet:
    """A vertex set of bounded ``d^2_x``-diameter carrying a constant share of the pair mass.

    Attributes:
        A: The set.
        alpha_diam: Diameter bound.
        beta_mass: Mass coefficient; the unordered pair sum over A is at least ``beta_mass * n^2``.
        sub_cover: Optional disjoint parts ``A_1..A_m`` whose union is A.
        centers: One member of each part.
        center: The vertex whose ball produced A, if any.
    """
    A: VertexSet
    alpha_diam: float = WELL_SPREAD_DIAMETER
    beta_mass: float = WELL_SPREAD_MASS
    sub_cover: Tuple[VertexSet, ...] | None = None
    centers: Tuple[int, ...] | None = None
    center: int | None = None

    def verify(self, d2: DistanceMatrix, tol: float = _TOL) -> bool:
        if not is_well_spread(self.A, d2, self.alpha_diam, self.beta_mass, tol):
            return False
        if self.sub_cover is None:
            return True
        parts = list(self.sub_cover)
        if frozenset().union(*parts) != self.A or sum(len(p) for p in parts) != len(self.A):
            return False
        return self.centers is None or all(c in p for c, p in zip(self.centers, parts))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A": sorted(self.A),
            "alpha_diam": self.alpha_diam,
            "beta_mass": self.beta_mass,
            "sub_cover": [sorted(p) for p in self.sub_cover] if self.sub_cover is not None else None,
            "centers": list(self.centers) if self.centers is not None else None,
            "center": self.center,
        }


def is_well_spread(A: Iterable[int], d2: DistanceMatrix, alpha: float, beta: float, tol: float = _TOL) -> bool:
    """Diameter at most alpha and unordered pair mass at least ``beta * n^2``."""
    A = frozenset(A)
    if not A:
        return False
    return diameter(A, d2) <= alpha + tol and pair_sum(d2, A) >= beta * d2.n * d2.n - tol


def best_ball_cut(G: Graph, d2: DistanceMatrix, centers: Sequence[int], radius: float = CUT_BALL_RADIUS) -> Cut | None:
    """Best Frechet cut over ``U = B(c, radius)``, skipping centres whose map is constant."""
    best = None
    for c in centers:
        try:
            cut = frechet_round(G, d2, ball(c, radius, d2), method="wellspread-cut")
        except DegenerateInputError:
            continue
        cut.trace["center"] = c
        best = best_cut(best, cut)
    return best


def wellspread_extract(G: Graph, sol: EmbeddingSolution, kappa: float = DEFAULT_KAPPA) -> Cut | WellSpreadSet:
    """A cut of expansion at most ``kappa * sdp``, else the first verified (4, 1/16)-well-spread ball.

    Raises:
        ExtractionFailureError: if neither branch verifies.
    """
    d2 = pairwise_squared(sol)
    sdp = energy(G, d2)
    cut = best_ball_cut(G, d2, range(G.n))
    if cut is not None and float(cut.expansion) <= kappa * sdp + _TOL:
        cut.trace.update({"sdp": sdp, "kappa": kappa})
        logger.info(f"Well-spread extraction: cut branch, expansion {float(cut.expansion):.4g} (sdp {sdp:.4g})")
        return cut

    best_mass = 0.0
    for radius in CANDIDATE_RADII:
        for c in range(G.n):
            W = ball(c, radius, d2)
            if is_well_spread(W, d2, WELL_SPREAD_DIAMETER, WELL_SPREAD_MASS):
                logger.info(f"Well-spread extraction: set branch, |W|={len(W)} around {c} (radius {radius})")
                return WellSpreadSet(A=W, center=c)
            best_mass = max(best_mass, pair_sum(d2, W))

    diagnostics = {
        "sdp": sdp,
        "kappa": kappa,
        "best_cut_expansion": float(cut.expansion) if cut is not None else None,
        "best_ball_mass": best_mass,
        "required_mass": WELL_SPREAD_MASS * G.n * G.n,
    }
    logger.warning(f"Well-spread extraction failed: {diagnostics}")
    raise ExtractionFailureError("neither a cheap cut nor a well-spread set was found", diagnostics)
