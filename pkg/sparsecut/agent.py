"""Sparsest cut pipeline module.

This module provides the SparsestCutPipeline class that orchestrates the
SDP relaxation, the structure pipelines and the rounding schemes
for one graph, and assembles the reports written by the CLI.
"""

import json
import logging
from typing import Any, Dict

from .config import Config
from .errors import SparseCutError, StageError
from .graph.graph import Cut, Graph
from .graph.spectrum import Spectrum, laplacian_spectrum, spectral_sweep
from .sdp import solve_arv
from .sdp.solution import EmbeddingSolution
from .skills.report import ReportSkill
from .skills.rounding import RoundingSkill
from .skills.structure import StructureSkill
from .utils.logging_config import get_json_handler
from .utils.validators import ExperimentConfig
from .utils.workers import WorkerPool

logger = logging.getLogger(__name__)


class SparsestCutPipeline:
    """Runs the sparsest cut machinery on one graph.

    Stages run on a worker pool; structure attempts for several seeds run
    concurrently and the outcome with the highest coverage is kept (ties go
    to the smaller seed), so the report depends only on the inputs.

    Attributes:
        graph: The input graph.
        experiment: The validated command-line parameters.
        cfg: Configuration object.
        mode: Which structure pipeline and rounding path to run.
        spectrum: Spectrum of the normalized Laplacian, once computed.
    """

    def __init__(self, graph: Graph, experiment: ExperimentConfig, config: Config | None = None,
                 pool: WorkerPool | None = None):
        """
        Initialize a pipeline.

        Args:
            graph: The graph to cut.
            experiment: Validated parameters (k, eps, delta, tol, seed, best_of, mode).
            config: Configuration object; defaults are used when omitted.
            pool: Worker pool to run stages on; one sized by ``MAX_WORKERS`` is created otherwise.
        """
        self.graph = graph
        self.experiment = experiment
        self.cfg = config or Config()
        self.mode = experiment.mode
        self.k = experiment.k
        self.eps = experiment.eps
        self.delta = experiment.delta
        self.tol = experiment.tol
        self.seed = experiment.seed if experiment.seed is not None else 0
        self.best_of = experiment.best_of
        self._owns_pool = pool is None
        self.pool = pool or WorkerPool(self.cfg.max_workers)
        self.spectrum: Spectrum | None = None
        self.solution: EmbeddingSolution | None = None

        self.structure: StructureSkill = StructureSkill(self)
        self.rounding: RoundingSkill = RoundingSkill(self)
        self.reporter: ReportSkill = ReportSkill(self)

    async def log_event(self, event_type: str, data: Dict[str, Any]) -> None:
        """Record a pipeline event in the JSON run log, when one is configured."""
        json_handler = get_json_handler()
        if json_handler is None:
            return
        try:
            json_handler.log_event(event_type, data)
        except Exception as e:
            logger.error(f"Error in log_event: {e}", exc_info=True)
        logging.getLogger("sparsecut.events").debug(f"{event_type}: {json.dumps(data, default=str)}")

    async def run_stage(self, stage: str, fn, *args):
        """Run one blocking stage on the pool, labelling any library failure with the stage name."""
        try:
            return await self.pool.run(fn, *args)
        except StageError:
            raise
        except SparseCutError as e:
            logger.warning(f"failed: {e}", extra={"stage": stage})
            raise StageError(stage, e) from e

    async def compute_spectrum(self) -> Spectrum:
        if self.spectrum is None:
            self.spectrum = await self.run_stage("spectrum", laplacian_spectrum, self.graph, self.cfg.eigen_tol,
                                                 self.cfg.spectrum_max_n)
        return self.spectrum

    async def solve(self) -> EmbeddingSolution:
        """Solve the ARV relaxation of the graph."""
        if self.solution is None:
            self.solution = await self.run_stage(
                "solve_arv", solve_arv, self.graph, self.tol, self.cfg.sdp_solver, self.cfg.sdp_solver_eps,
                self.cfg.sdp_max_iters, self.cfg.sdp_max_n,
            )
            await self.log_event("solve_arv", {"objective": self.solution.objective, "m": self.solution.m})
        return self.solution

    async def baseline(self) -> Cut:
        """Cheeger sweep over the second eigenvector."""
        spectrum = await self.compute_spectrum()
        return await self.run_stage("spectral_sweep", spectral_sweep, self.graph, spectrum)

    async def conduct_pipeline(self) -> Dict[str, Any]:
        """Run SDP, structure and rounding and return the validated ``pipeline`` report."""
        try:
            logger.info(f"Pipeline: n={self.graph.n}, r={self.graph.r}, mode={self.mode.value}, k={self.k}, "
                        f"eps={self.eps}, delta={self.delta}, seed={self.seed}")
            await self.log_event("pipeline", {"stage": "start", "mode": self.mode.value, "n": self.graph.n})
            await self.compute_spectrum()
            sol = await self.solve()
            outcome, verification, attempts = await self.structure.best_of_seeds(sol)
            cut, sa_record = await self.rounding.round_outcome(sol, outcome)
            baseline = await self.baseline()
            logger.info(f"Pipeline: cut expansion {float(cut.expansion):.6g}, "
                        f"baseline {float(baseline.expansion):.6g}, sdp {sol.objective:.6g}")
            report = await self.run_stage("report", self.reporter.pipeline_report, sol, outcome, verification,
                                          attempts, cut, baseline, sa_record)
            await self.log_event("pipeline", {"stage": "finished", "expansion": float(cut.expansion)})
            return report
        finally:
            self.close()

    async def diagnose(self) -> Dict[str, Any]:
        """Return the validated ``diagnose`` report."""
        try:
            spectrum = await self.compute_spectrum()
            return await self.run_stage("diagnose", self.reporter.diagnose_report, spectrum)
        finally:
            self.close()

    def close(self) -> None:
        if self._owns_pool:
            self.pool.shutdown()

