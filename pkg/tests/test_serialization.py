"""
Tests for JSON and binary encodings, the pydantic experiment and report models, and the published report schema.
"""

import json
import struct
from fractions import Fraction

import jsonschema
import numpy as np
import pytest
from pydantic import ValidationError

from json_schema_generator import generate_report_schema, validate_report
from sparsecut.errors import InvalidArgumentError
from sparsecut.graph import make_cut
from sparsecut.metric import pairwise_squared
from sparsecut.partition import Certificate, Cover, lipschitz_partition
from sparsecut.sdp import integral_sa_witness
from sparsecut.utils.enum import DistanceKind, PipelineMode
from sparsecut.utils.serialization import (
    certificate_from_dict,
    cover_from_dict,
    cover_to_dict,
    cut_from_dict,
    cut_to_dict,
    distances_from_bytes,
    distances_to_bytes,
    dumps,
    partition_from_dict,
    partition_to_dict,
    read_distances,
    sa_from_dict,
    sa_to_dict,
    solution_from_dict,
    solution_to_dict,
    to_jsonable,
    write_distances,
)
from sparsecut.utils.validators import ExperimentConfig, OutcomeReport, report_schema


class TestJsonable:
    """Conversion of report payloads to plain JSON values."""

    def test_conversions(self):
        payload = {
            "nan": float("nan"),
            "inf": np.float64("inf"),
            "set": frozenset({2, 1}),
            "int": np.int64(3),
            "fraction": Fraction(1, 4),
            "kind": DistanceKind.Squared,
            "array": np.array([1, 2]),
            "flag": np.bool_(True),
            7: None,
        }
        assert to_jsonable(payload) == {
            "nan": None, "inf": None, "set": [1, 2], "int": 3, "fraction": 0.25,
            "kind": "squared", "array": [1, 2], "flag": True, "7": None,
        }

    def test_dumps_sorted(self):
        assert dumps({"b": 1, "a": [0.5]}) == '{\n  "a": [\n    0.5\n  ],\n  "b": 1\n}'


class TestSolutions:
    """ARV and SA solution encodings."""

    def test_solution(self, half_cut):
        data = json.loads(json.dumps(solution_to_dict(half_cut)))
        restored = solution_from_dict(data)
        assert np.array_equal(restored.vectors, half_cut.vectors)
        assert restored.kind == half_cut.kind
        assert restored.objective == half_cut.objective

    def test_solution_shape_mismatch(self, half_cut):
        data = solution_to_dict(half_cut)
        data["m"] = 3
        with pytest.raises(InvalidArgumentError):
            solution_from_dict(data)

    def test_sa_patterns_keyed_by_bits(self, half_cut):
        data = sa_to_dict(integral_sa_witness(half_cut, range(4), (0, 4)))
        assert sorted(data["patterns"]) == ["00", "01", "10", "11"]
        assert data["patterns"]["10"]["p"] == 1.0
        restored = sa_from_dict(json.loads(json.dumps(data)))
        assert restored.R == (0, 4)
        assert restored.p.tolist() == [0.0, 1.0, 0.0, 0.0]

    def test_sa_bad_pattern_key(self, half_cut):
        data = sa_to_dict(integral_sa_witness(half_cut, range(4), (0, 4)))
        data["patterns"]["1x"] = data["patterns"].pop("11")
        with pytest.raises(InvalidArgumentError):
            sa_from_dict(data)


class TestDistanceBytes:
    """The little-endian distance matrix format."""

    def test_layout(self, half_cut):
        d = pairwise_squared(half_cut)
        raw = distances_to_bytes(d)
        assert len(raw) == 8 + 8 * 64
        assert struct.unpack_from("<II", raw) == (8, DistanceKind.Squared.code)
        restored = distances_from_bytes(raw)
        assert restored.kind == DistanceKind.Squared
        assert np.array_equal(restored.values, d.values)

    def test_file(self, tmp_path, half_cut):
        path = tmp_path / "d.bin"
        write_distances(pairwise_squared(half_cut), path)
        assert read_distances(path).n == 8

    def test_truncated(self, half_cut):
        raw = distances_to_bytes(pairwise_squared(half_cut))
        with pytest.raises(InvalidArgumentError):
            distances_from_bytes(raw[:-8])
        with pytest.raises(InvalidArgumentError):
            distances_from_bytes(raw[:4])

    def test_unknown_kind(self):
        raw = struct.pack("<II", 1, 99) + np.zeros(1).tobytes()
        with pytest.raises(InvalidArgumentError):
            distances_from_bytes(raw)


class TestStructures:
    """Partitions, covers, cuts and certificates."""

    def test_partition(self, half_cut):
        P = lipschitz_partition(half_cut, delta=0.5, seed=3)
        restored = partition_from_dict(json.loads(json.dumps(partition_to_dict(P))))
        assert restored.blocks == P.blocks
        assert restored.scheme == "ckr"

    def test_cover(self, half_cut):
        cover = Cover.build([range(4), range(4, 8)], pairwise_squared(half_cut), "squared")
        assert cover_from_dict(cover_to_dict(cover)) == cover

    def test_cut(self, c8):
        cut = make_cut(c8, {0, 1, 2, 3}, method="round-arv", seed=5)
        restored = cut_from_dict(cut_to_dict(cut))
        assert restored == cut
        assert restored.expansion == Fraction(1, 4)

    def test_certificate_values_recomputed(self, c8):
        data = Certificate.expansion(c8, [{0, 1, 2, 3}]).to_dict()
        data["values"] = [0.0]
        assert certificate_from_dict(c8, data).values == (0.25,)

    def test_certificate_unknown_variant(self, c8):
        with pytest.raises(InvalidArgumentError):
            certificate_from_dict(c8, {"variant": "ratio"})


class TestExperimentConfig:
    """Validation of CLI parameters."""

    def test_defaults(self):
        experiment = ExperimentConfig(command="diagnose", graph="c8.txt")
        assert experiment.mode == PipelineMode.Lambda
        assert experiment.to_report()["mode"] == "lambda"
        assert (experiment.k, experiment.eps, experiment.delta) == (2, 0.25, 0.5)

    def test_pipeline_requires_seed(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(command="pipeline", graph="c8.txt")

    def test_pipeline_eps_at_most_half(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(command="pipeline", graph="c8.txt", seed=1, eps=0.75)

    def test_graph_required(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(command="diagnose")

    @pytest.mark.parametrize("field, value", [("k", 0), ("k", 65), ("delta", 1.0), ("eps", 0.0), ("seed", -1)])
    def test_ranges(self, field, value):
        with pytest.raises(ValidationError):
            ExperimentConfig(command="pipeline", graph="c8.txt", seed=1, **{field: value})

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(command="generate", solver="MOSEK")

    def test_mode_from_string(self):
        experiment = ExperimentConfig(command="pipeline", graph="g.txt", seed=0, mode="sa")
        assert experiment.mode == PipelineMode.SA


class TestReportSchema:
    """Pydantic report models and the generated JSON schema."""

    def test_outcome_must_populate_its_branch(self):
        with pytest.raises(ValidationError):
            OutcomeReport(branch="cover", certificate={"variant": "spectral"})
        with pytest.raises(ValidationError):
            OutcomeReport(branch="certificate")
        assert OutcomeReport(branch="cover", cover={"sets": []}).branch == "cover"

    def test_schema_is_valid_draft_2020_12(self):
        schema = report_schema()
        assert schema["title"] == "sparsecut report"
        jsonschema.Draft202012Validator.check_schema(schema)

    def test_generate_and_validate(self, tmp_path):
        path = generate_report_schema(tmp_path / "schemas" / "report.schema.json")
        assert json.loads(path.read_text())["title"] == "sparsecut report"
        with pytest.raises(jsonschema.ValidationError):
            validate_report({"command": "diagnose"}, path)
