"""
Tests for the SparsestCutPipeline orchestration: stages, best-of-seeds structure runs and the assembled reports.
"""

import math
from unittest.mock import patch

import pytest

from sparsecut import SparsestCutPipeline
from sparsecut.config import Config
from sparsecut.errors import InvalidArgumentError, StageError
from sparsecut.graph import cycle
from sparsecut.metric import pairwise_squared
from sparsecut.oracle import brute_phi
from sparsecut.partition import Cover
from sparsecut.sdp import embed_integral_cut, integral_sa_witness
from sparsecut.skills.rounding import representatives
from sparsecut.skills.structure import outcome_key
from sparsecut.structure import cover_via_lambda
from sparsecut.utils.serialization import dumps
from sparsecut.utils.validators import DiagnoseReport, ExperimentConfig, PipelineReport

BLOCK = frozenset(range(4))
SHIFTED = frozenset({1, 2, 3, 5})


def pipeline_experiment(mode="lambda", best_of=1):
    return ExperimentConfig(command="pipeline", graph="clusters.txt", mode=mode, k=1, eps=0.25, delta=0.5,
                            seed=7, best_of=best_of)


@pytest.fixture
def planted(clusters):
    """Integral solution on the first planted block (objective 1/6)."""
    return embed_integral_cut(clusters, BLOCK)


class TestDiagnose:
    """The ``diagnose`` report."""

    @pytest.mark.asyncio
    async def test_cycle_report(self, c8, config):
        pipeline = SparsestCutPipeline(c8, ExperimentConfig(command="diagnose", graph="c8.txt"), config)
        report = await pipeline.diagnose()
        DiagnoseReport.model_validate(report)
        assert report["graph"] == {"n": 8, "r": 2, "m": 8}
        assert report["spectrum_prefix"][1] == pytest.approx(1 - math.cos(math.pi / 4))
        assert report["trace_identity"] == pytest.approx(8.0)
        assert report["threshold_rank"] == {"0.1": 1, "0.25": 1, "0.5": 3}
        assert report["brute_phi"]["value"] == pytest.approx(0.25)
        assert sorted(report["brute_sse"]) == ["1", "2", "4"]
        assert report["brute_phi_k"]["2"]["value"] == pytest.approx(0.25)
        assert report["cheeger"]["lower"] <= 0.25 <= report["cheeger"]["upper"]

    @pytest.mark.asyncio
    async def test_oracles_skipped_above_cap(self, config):
        G = cycle(22)
        pipeline = SparsestCutPipeline(G, ExperimentConfig(command="diagnose", graph="c22.txt"), config)
        report = await pipeline.diagnose()
        assert report["brute_phi"] is None
        assert all(value is None for value in report["brute_phi_k"].values())


class TestStages:
    """Stage execution on the worker pool."""

    @pytest.mark.asyncio
    async def test_library_error_labelled_with_stage(self, c8, config):
        pipeline = SparsestCutPipeline(c8, pipeline_experiment(), config)

        def fail():
            raise InvalidArgumentError("bad input", {"value": 3})

        try:
            with pytest.raises(StageError) as exc_info:
                await pipeline.run_stage("round_arv", fail)
        finally:
            pipeline.close()
        assert exc_info.value.stage == "round_arv"
        assert str(exc_info.value).startswith("[round_arv]")
        assert exc_info.value.diagnostics == {"value": 3}

    @pytest.mark.asyncio
    async def test_other_errors_pass_through(self, c8, config):
        pipeline = SparsestCutPipeline(c8, pipeline_experiment(), config)
        try:
            with pytest.raises(ZeroDivisionError):
                await pipeline.run_stage("ratio", divmod, 1, 0)
        finally:
            pipeline.close()

    @pytest.mark.asyncio
    async def test_log_event_without_handler(self, c8, config):
        pipeline = SparsestCutPipeline(c8, pipeline_experiment(), config)
        try:
            assert await pipeline.log_event("noop", {"a": 1}) is None
        finally:
            pipeline.close()


class TestHelpers:
    """Selection rules used by the skills."""

    def test_representatives(self, half_cut):
        d2 = pairwise_squared(half_cut)
        cover = Cover.build([{5, 6}, set(), {0, 1, 2}, {7}], d2, "squared")
        assert representatives(cover, 10) == [0, 5, 7]
        assert representatives(cover, 2) == [0, 5]

    def test_outcome_key_prefers_coverage_then_seed(self, two_k4):
        sol = embed_integral_cut(two_k4, BLOCK)
        outcome = cover_via_lambda(two_k4, sol, k=1, eps=0.25, delta=0.5, seed=0)
        assert outcome_key(outcome, 3) == (-8, 3)
        assert outcome_key(outcome, 1) < outcome_key(outcome, 3)


class TestConductPipeline:
    """Full runs with the SDP solvers replaced by integral solutions."""

    @pytest.mark.asyncio
    async def test_lambda_mode(self, clusters, planted, config):
        pipeline = SparsestCutPipeline(clusters, pipeline_experiment(best_of=2), config)
        with patch("sparsecut.agent.solve_arv", return_value=planted):
            report = await pipeline.conduct_pipeline()
        PipelineReport.model_validate(report)
        assert report["cut"]["expansion"] == pytest.approx(1 / 6)
        assert report["brute_phi"] == pytest.approx(1 / 6)
        assert report["ratios"]["expansion_over_brute_phi"] == pytest.approx(1.0)
        assert report["ratios"]["expansion_over_sdp"] == pytest.approx(1.0)
        assert report["outcome"]["branch"] == "cover"
        assert report["outcome"]["verification"]["pass"]
        assert len(report["attempts"]) == 2
        assert report["sa"] is None
        assert report["config"]["mode"] == "lambda"

    @pytest.mark.asyncio
    async def test_phi_mode(self, clusters, planted, config):
        pipeline = SparsestCutPipeline(clusters, pipeline_experiment(mode="phi"), config)
        with patch("sparsecut.agent.solve_arv", return_value=planted):
            report = await pipeline.conduct_pipeline()
        assert report["outcome"]["trace"]["pipeline"] == "phi"
        assert report["cut"]["expansion"] == pytest.approx(1 / 6)

    @pytest.mark.asyncio
    async def test_sa_mode(self, clusters, planted):
        config = Config(LIPSCHITZ_ESTIMATE_TRIALS=5, MAX_WORKERS=2, KAPPA=0.0)
        witness = integral_sa_witness(planted, BLOCK, (0, 4))
        pipeline = SparsestCutPipeline(clusters, pipeline_experiment(mode="sa"), config)
        with patch("sparsecut.agent.solve_arv", return_value=planted), \
                patch("sparsecut.skills.rounding.solve_sa_for_set", return_value=(planted, witness)) as solve_sa:
            report = await pipeline.conduct_pipeline()
        assert solve_sa.call_count == 1
        assert solve_sa.call_args.args[1] == [0, 4]
        assert report["sa"]["R"] == [0, 4]
        assert report["sa"]["consistent"]
        assert set(report["sa"]["R"]) <= set(report["sa"]["cover_centers"])
        assert report["cut"]["method"] == "round-sa"
        assert report["cut"]["expansion"] == pytest.approx(1 / 6)
        assert report["cut"]["trace"]["pattern"] == "10"

    @pytest.mark.asyncio
    async def test_sa_resolved_for_cover_of_sa_vectors(self, clusters, planted):
        """Test that SA is solved again when its vectors are covered around other representatives."""
        config = Config(LIPSCHITZ_ESTIMATE_TRIALS=5, MAX_WORKERS=2, KAPPA=0.0)
        other = embed_integral_cut(clusters, SHIFTED)
        solves = [(other, integral_sa_witness(other, SHIFTED, (0, 4))),
                  (other, integral_sa_witness(other, SHIFTED, (0, 1)))]
        pipeline = SparsestCutPipeline(clusters, pipeline_experiment(mode="sa"), config)
        with patch("sparsecut.agent.solve_arv", return_value=planted), \
                patch("sparsecut.skills.rounding.solve_sa_for_set", side_effect=solves) as solve_sa:
            report = await pipeline.conduct_pipeline()
        assert [call.args[1] for call in solve_sa.call_args_list] == [[0, 4], [0, 1]]
        assert report["sa"]["tried"] == [[0, 4], [0, 1]]
        assert report["sa"]["R"] == [0, 1]
        assert report["sa"]["consistent"] is True
        assert set(report["sa"]["R"]) <= set(report["sa"]["cover_centers"])
        assert report["cut"]["method"] == "round-sa"

    @pytest.mark.asyncio
    async def test_seeded_runs_repeat_exactly(self, clusters, planted, config):
        reports = []
        for _ in range(2):
            pipeline = SparsestCutPipeline(clusters, pipeline_experiment(mode="phi", best_of=2), config)
            with patch("sparsecut.agent.solve_arv", return_value=planted):
                report = await pipeline.conduct_pipeline()
            report.pop("timestamp")
            reports.append(dumps(report))
        assert reports[0] == reports[1]

    @pytest.mark.asyncio
    async def test_solver_failure_reported_with_stage(self, clusters, config):
        pipeline = SparsestCutPipeline(clusters, pipeline_experiment(), config)
        with patch("sparsecut.agent.solve_arv", side_effect=InvalidArgumentError("no solution")):
            with pytest.raises(StageError) as exc_info:
                await pipeline.conduct_pipeline()
        assert exc_info.value.stage == "solve_arv"

    @pytest.mark.slow
    @pytest.mark.asyncio
    async def test_cycle_end_to_end(self, c8, config):
        """Test that a real SDP run on C8 reports a cut no better than the brute-force optimum."""
        experiment = ExperimentConfig(command="pipeline", graph="c8.txt", k=1, seed=3)
        report = await SparsestCutPipeline(c8, experiment, config).conduct_pipeline()
        PipelineReport.model_validate(report)
        assert report["cut"]["expansion"] >= 0.25 - 1e-12
        assert report["solution"]["objective"] <= 0.25 + 1e-3

    @pytest.mark.slow
    @pytest.mark.asyncio
    @pytest.mark.parametrize("mode", ["lambda", "phi"])
    @pytest.mark.parametrize("graph_name", ["c8", "clusters"])
    async def test_cut_within_constant_of_optimum(self, request, graph_name, mode, config):
        G = request.getfixturevalue(graph_name)
        experiment = ExperimentConfig(command="pipeline", graph=f"{graph_name}.txt", mode=mode, k=1, seed=5)
        report = await SparsestCutPipeline(G, experiment, config).conduct_pipeline()
        optimum = brute_phi(G).value
        assert optimum - 1e-12 <= report["cut"]["expansion"] <= 4 * optimum
