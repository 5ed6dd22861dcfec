"""Structure skill for the sparsest cut pipeline.

This module provides the StructureSkill class that runs a structure
pipeline for several seeds at once and keeps the best outcome.
"""

import asyncio
import logging
from typing import Any, Dict, List, Tuple

from ..sdp.solution import EmbeddingSolution
from ..structure import StructureOutcome, cover_via_lambda, cover_via_phi, verify_outcome
from ..utils.enum import PipelineMode
from ..utils.seeds import derive_seeds


def outcome_key(outcome: StructureOutcome, seed: int) -> Tuple[int, int]:
    """Sort key: higher coverage first, then smaller seed."""
    return -outcome.coverage, seed


class StructureSkill:
    """Runs ``cover_via_lambda`` or ``cover_via_phi`` for best-of-N seeds.

    Attributes:
        pipeline: The parent SparsestCutPipeline instance.
        logger: Logger for structure events.
    """

    def __init__(self, pipeline):
        """Initialize the StructureSkill.

        Args:
            pipeline: The SparsestCutPipeline that owns this skill.
        """
        self.pipeline = pipeline
        self.logger = logging.getLogger(__name__)

    def structure_fn(self):
        """The spectral pipeline serves both the lambda and SA modes."""
        return cover_via_phi if self.pipeline.mode == PipelineMode.Phi else cover_via_lambda

    def _run_one(self, sol: EmbeddingSolution, seed: int) -> StructureOutcome:
        p = self.pipeline
        return self.structure_fn()(p.graph, sol, p.k, p.eps, p.delta, seed, config=p.cfg)

    async def best_of_seeds(self, sol: EmbeddingSolution, label: str = "structure") -> Tuple[
            StructureOutcome, Dict[str, Any], List[Dict[str, Any]]]:
        """Run the structure pipeline for every derived seed and select one outcome.

        Returns:
            The chosen outcome, its verification report, and one summary per seed.
        """
        p = self.pipeline
        seeds = derive_seeds(p.seed, p.best_of, stream=0)
        self.logger.info(f"{label}: {self.structure_fn().__name__} over {len(seeds)} seed(s)")
        outcomes = await asyncio.gather(*(p.run_stage(label, self._run_one, sol, s) for s in seeds))

        attempts = [
            {"seed": s, "branch": o.branch.value, "coverage": o.coverage}
            for s, o in zip(seeds, outcomes)
        ]
        seed, outcome = min(zip(seeds, outcomes), key=lambda pair: outcome_key(pair[1], pair[0]))
        verification = verify_outcome(p.graph, sol, outcome, p.k, p.eps, p.delta, spectrum=p.spectrum,
                                      phi_k_max_n=p.cfg.oracle_phi_k_max_n,
                                      phi_k_small_k_max_n=p.cfg.oracle_phi_k_small_k_max_n)
        outcome.trace["selected_seed"] = seed
        if not verification["pass"]:
            self.logger.error(f"{label}: {outcome.branch.value} branch failed verification: {verification}")
        branch = outcome.branch.value
        self.logger.info(f"{label}: {branch} branch from seed {seed} (coverage {outcome.coverage})")
        await p.log_event(label, {"seed": seed, "branch": branch, "coverage": outcome.coverage,
                                  "verified": verification["pass"]})
        return outcome, verification, attempts
