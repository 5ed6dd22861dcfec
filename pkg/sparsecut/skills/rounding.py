"""Rounding skill for the sparsest cut pipeline.

This module provides the RoundingSkill class that turns a structure
outcome into a cut: ARV cover rounding, Sherali-Adams rounding for the
``sa`` mode, and direct rounding of a certificate when no cover exists.
"""

import logging
from typing import Any, Dict, List, Tuple

from ..errors import DegenerateInputError
from ..graph.graph import Cut, make_cut
from ..partition.covers import Certificate, Cover
from ..rounding import best_cut, frechet_sweep, round_arv, round_sa
from ..sdp import solve_sa_for_set
from ..sdp.solution import EmbeddingSolution
from ..structure import StructureOutcome
from ..utils.enum import CertificateVariant, PipelineMode


def representatives(cover: Cover, max_set: int) -> List[int]:
    """Smallest member of each nonempty cover set, largest sets first, at most ``max_set`` of them."""
    sets = sorted(cover.nonempty(), key=lambda s: (-len(s), min(s)))
    return sorted(min(s) for s in sets[:max_set])


class RoundingSkill:
    """Rounds SDP solutions through the cover produced by the structure skill.

    Attributes:
        pipeline: The parent SparsestCutPipeline instance.
        logger: Logger for rounding events.
    """

    def __init__(self, pipeline):
        """Initialize the RoundingSkill.

        Args:
            pipeline: The SparsestCutPipeline that owns this skill.
        """
        self.pipeline = pipeline
        self.logger = logging.getLogger(__name__)

    def round_certificate(self, certificate: Certificate) -> Cut:
        """Best cut read off a certificate.

        Expansion certificates hold disjoint low-expansion sets; spectral
        ones are swept like a Frechet map.
        """
        p = self.pipeline
        G = p.graph
        if certificate.variant == CertificateVariant.Expansion:
            cuts = [make_cut(G, s, method="certificate-set", seed=p.seed) for s in certificate.sets if len(s) < G.n]
        else:
            cuts = []
            for f in certificate.functions:
                try:
                    cuts.append(frechet_sweep(G, f, method="certificate-sweep", seed=p.seed))
                except DegenerateInputError:
                    continue
        best = best_cut(*cuts)
        if best is None:
            best = make_cut(G, [0], method="certificate-sweep", seed=p.seed)
        return best

    async def round_outcome(self, sol: EmbeddingSolution, outcome: StructureOutcome) -> Tuple[Cut, Dict[str, Any] | None]:
        """Round according to the pipeline mode.

        Returns:
            The cut and, in ``sa`` mode, a record of the SA stage.
        """
        p = self.pipeline
        if outcome.cover is None:
            self.logger.info("No cover available; rounding the certificate directly")
            cut = await p.run_stage("round_certificate", self.round_certificate, outcome.certificate)
            return cut, None
        if p.mode != PipelineMode.SA:
            cut = await p.run_stage("round_arv", round_arv, p.graph, sol, outcome.cover, p.seed, p.cfg)
            return cut, None
        return await self.round_with_sa(outcome.cover)

    async def round_with_sa(self, cover: Cover) -> Tuple[Cut, Dict[str, Any]]:
        """Solve SA for cover representatives, recover a cover of its vectors and sample cut metrics.

        R starts as the representatives of ``cover``. While the cover of the SA
        vectors has other representatives, SA is re-solved for them, at most
        ``SA_RESOLVE_ROUNDS`` solves in all.
        """
        p = self.pipeline
        C = representatives(cover, p.cfg.sa_max_set)
        tried: List[List[int]] = []
        while True:
            tried.append(C)
            self.logger.info(f"Solving SA program for representatives {C}")
            sa_sol, sa = await p.run_stage(
                "solve_sa_for_set", solve_sa_for_set, p.graph, C, p.tol, p.cfg.sdp_solver, p.cfg.sdp_solver_eps,
                p.cfg.sdp_max_iters, p.cfg.sdp_max_n, p.cfg.sa_max_set,
            )
            sa_outcome, verification, attempts = await p.structure.best_of_seeds(sa_sol, label="structure_sa")
            if sa_outcome.cover is None:
                break
            C_next = representatives(sa_outcome.cover, p.cfg.sa_max_set)
            if C_next == list(sa.R) or len(tried) >= p.cfg.sa_resolve_rounds:
                break
            self.logger.info(f"SA cover has representatives {C_next}, not {list(sa.R)}; solving again")
            C = C_next

        centers = representatives(sa_outcome.cover, p.cfg.sa_max_set) if sa_outcome.cover is not None else None
        record: Dict[str, Any] = {
            "R": list(sa.R),
            "tried": tried,
            "cover_centers": centers,
            "consistent": centers == list(sa.R) if centers is not None else None,
            "objective": sa_sol.objective,
            "outcome": sa_outcome.to_dict(),
            "verification": verification,
            "attempts": attempts,
        }
        if sa_outcome.cover is None:
            self.logger.info("SA vectors gave a certificate; rounding it directly")
            cut = await p.run_stage("round_certificate", self.round_certificate, sa_outcome.certificate)
            return cut, record
        if not record["consistent"]:
            self.logger.warning(f"SA representatives {list(sa.R)} differ from the cover centres {centers}")
        cut = await p.run_stage("round_sa", round_sa, p.graph, sa_sol, sa, sa_outcome.cover, p.seed, p.cfg)
        return cut, record
