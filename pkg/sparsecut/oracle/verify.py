"""Independent checks of structure pipeline outputs."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np

from ..errors import InvalidArgumentError
from ..graph.graph import Graph, check_disjoint_supports, expansion, rayleigh
from ..metric.distance import DistanceMatrix, diameter
from ..partition.covers import Certificate, Cover, check_disjoint_sets
from ..utils.enum import CertificateVariant

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_TOL = 1e-9


def cover_report(cover: Cover, d: DistanceMatrix, delta: float, eps: float,
                 tol: float = DEFAULT_VERIFY_TOL) -> Dict[str, Any]:
    """Recomputed diameters and coverage of ``cover`` under d."""
    for s in cover.sets:
        if any(not 0 <= v < d.n for v in s):
            raise InvalidArgumentError(f"cover set has a vertex outside 0..{d.n - 1}")
    diameters = [diameter(s, d) if s else 0.0 for s in cover.sets]
    covered = len(frozenset().union(*cover.sets)) if cover.sets else 0
    diameter_ok = all(x <= delta + tol for x in diameters)
    coverage_ok = covered >= (1.0 - eps) * d.n - tol
    return {
        "diameters": diameters,
        "max_diameter": max(diameters, default=0.0),
        "delta": delta,
        "covered_count": covered,
        "required_count": (1.0 - eps) * d.n,
        "diameter_ok": diameter_ok,
        "coverage_ok": coverage_ok,
        "pass": diameter_ok and coverage_ok,
    }


def verify_cover(cover: Cover, d: DistanceMatrix, delta: float, eps: float, tol: float = DEFAULT_VERIFY_TOL) -> bool:
    """True iff every set has d-diameter at most delta and the union has at least ``(1-eps) n`` vertices."""
    return cover_report(cover, d, delta, eps, tol)["pass"]


@dataclass(frozen=True)
class CertificateReport:
    """Recomputed certificate values and the bound they imply.

    For spectral certificates ``implied_bound`` bounds ``lambda_k`` (twice the
    largest Rayleigh quotient); for expansion certificates it bounds ``phi_k``.
    """
    variant: CertificateVariant
    k: int
    values: List[float]
    implied_bound: float
    matches_recorded: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant.value,
            "k": self.k,
            "values": self.values,
            "implied_bound": self.implied_bound,
            "matches_recorded": self.matches_recorded,
        }


def verify_certificate(G: Graph, cert: Certificate, tol: float = DEFAULT_VERIFY_TOL) -> CertificateReport:
    """Recompute a certificate from scratch.

    Raises:
        InvalidArgumentError: for an empty certificate, overlapping supports or
            sets, zero functions, or functions of the wrong length.
    """
    if cert.variant == CertificateVariant.Spectral:
        if not cert.functions:
            raise InvalidArgumentError("spectral certificate has no functions")
        check_disjoint_supports(cert.functions)
        values = [rayleigh(G, f) for f in cert.functions]
        bound = 2.0 * max(values)
    else:
        if not cert.sets:
            raise InvalidArgumentError("expansion certificate has no sets")
        check_disjoint_sets([G.vertex_set(s) for s in cert.sets])
        values = [float(expansion(G, s)) for s in cert.sets]
        bound = max(values)
    recorded = list(cert.values)
    matches = len(recorded) == len(values) and bool(np.allclose(recorded, values, rtol=0.0, atol=tol))
    if not matches:
        logger.warning(f"Certificate values differ from recomputation: {recorded} vs {values}")
    return CertificateReport(variant=cert.variant, k=len(values), values=values, implied_bound=bound,
                             matches_recorded=matches)
