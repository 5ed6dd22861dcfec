"""Report skill for the sparsest cut pipeline.

This module provides the ReportSkill class that assembles the JSON
reports of the ``pipeline`` and ``diagnose`` commands and validates them
against the pydantic report models.
"""

import logging
import math
from datetime import datetime, timezone
from typing import Any, Dict

from ..errors import ResourceLimitError
from ..graph.graph import Cut
from ..graph.spectrum import Spectrum, spectral_sweep, threshold_rank
from ..oracle import brute_phi, brute_phi_k, brute_sse
from ..sdp.feasibility import check_feasibility
from ..sdp.solution import EmbeddingSolution
from ..structure import StructureOutcome
from ..utils.serialization import to_jsonable
from ..utils.validators import DiagnoseReport, PipelineReport

SPECTRUM_PREFIX = 8
THRESHOLD_TAUS = (0.1, 0.25, 0.5)
DIAGNOSE_KS = (2, 3, 4)


def timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def ratio(numerator: float, denominator: float | None) -> float | None:
    if denominator is None or denominator <= 0:
        return None
    value = numerator / denominator
    return value if math.isfinite(value) else None


class ReportSkill:
    """Builds the reports written by the CLI.

    Attributes:
        pipeline: The parent SparsestCutPipeline instance.
        logger: Logger for report events.
    """

    def __init__(self, pipeline):
        """Initialize the ReportSkill.

        Args:
            pipeline: The SparsestCutPipeline that owns this skill.
        """
        self.pipeline = pipeline
        self.logger = logging.getLogger(__name__)

    def _graph_summary(self) -> Dict[str, int]:
        G = self.pipeline.graph
        return {"n": G.n, "r": G.r, "m": G.m}

    def brute_phi_value(self) -> float | None:
        p = self.pipeline
        try:
            return float(brute_phi(p.graph, max_n=p.cfg.oracle_max_n).value)
        except ResourceLimitError as e:
            self.logger.info(f"Skipping brute-force phi: {e}")
            return None

    def pipeline_report(self, sol: EmbeddingSolution, outcome: StructureOutcome, verification: Dict[str, Any],
                        attempts: list, cut: Cut, baseline: Cut, sa_record: Dict[str, Any] | None) -> Dict[str, Any]:
        """Assemble, validate and return the ``pipeline`` report as plain JSON data."""
        p = self.pipeline
        phi = self.brute_phi_value()
        expansion = float(cut.expansion)
        feasibility = check_feasibility(sol, p.tol).to_dict()
        report = {
            "schema": 1,
            "command": "pipeline",
            "timestamp": timestamp(),
            "config": p.experiment.to_report(),
            "settings": p.cfg.to_dict(),
            "graph": self._graph_summary(),
            "solution": {"n": sol.n, "m": sol.m, "objective": sol.objective, "kind": sol.kind.value,
                         "feasibility": feasibility},
            "outcome": {**outcome.to_dict(), "verification": verification},
            "attempts": attempts,
            "cut": cut.to_dict(),
            "baseline": baseline.to_dict(),
            "sa": sa_record,
            "brute_phi": phi,
            "ratios": {
                "expansion_over_sdp": ratio(expansion, sol.objective),
                "expansion_over_brute_phi": ratio(expansion, phi),
                "baseline_over_sdp": ratio(float(baseline.expansion), sol.objective),
            },
        }
        report = to_jsonable(report)
        PipelineReport.model_validate(report)
        return report

    def diagnose_report(self, spectrum: Spectrum) -> Dict[str, Any]:
        """Spectrum prefix, Cheeger sweep and the brute-force values that fit within the caps."""
        p = self.pipeline
        G = p.graph
        cfg = p.cfg
        sweep = spectral_sweep(G, spectrum)

        def guarded(fn, *args, **kwargs):
            try:
                return fn(*args, **kwargs).to_dict()
            except ResourceLimitError as e:
                self.logger.info(f"Skipping {fn.__name__}: {e}")
                return None

        report = {
            "schema": 1,
            "command": "diagnose",
            "timestamp": timestamp(),
            "config": p.experiment.to_report(),
            "graph": self._graph_summary(),
            "spectrum_prefix": spectrum.prefix(SPECTRUM_PREFIX),
            "trace_identity": float(spectrum.eigenvalues.sum()),
            "max_residual": spectrum.max_residual,
            "threshold_rank": {str(tau): threshold_rank(G, tau, spectrum) for tau in THRESHOLD_TAUS},
            "cheeger": {
                "lambda_2": sweep.trace["lambda_2"],
                "lower": sweep.trace["cheeger_lower"],
                "upper": sweep.trace["cheeger_upper"],
                "sweep": sweep.to_dict(),
            },
            "brute_phi": guarded(brute_phi, G, max_n=cfg.oracle_max_n),
            "brute_phi_k": {
                str(k): guarded(brute_phi_k, G, k, max_n=cfg.oracle_phi_k_max_n,
                                small_k_max_n=cfg.oracle_phi_k_small_k_max_n)
                for k in DIAGNOSE_KS if k <= G.n
            },
            "brute_sse": {
                str(s): guarded(brute_sse, G, s, max_n=cfg.oracle_max_n)
                for s in sorted({1, max(1, G.n // 4), max(1, G.n // 2)})
            },
        }
        report = to_jsonable(report)
        DiagnoseReport.model_validate(report)
        return report
