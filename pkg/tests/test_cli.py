"""
Tests for the command line interface: argument validation, exit codes and the files each command writes.
"""

import csv
import io
import json

import pytest

from cli import PLOT_COLUMNS, emit_plotdata, main
from json_schema_generator import validate_report
from sparsecut.errors import InvalidArgumentError
from sparsecut.graph import cycle, read_graph, write_graph


@pytest.fixture
def c8_file(tmp_path):
    path = tmp_path / "c8.txt"
    write_graph(cycle(8), path)
    return path


def fake_report(k, seed, expansion):
    return {
        "command": "pipeline",
        "config": {"mode": "lambda", "k": k, "eps": 0.25, "delta": 0.5, "seed": seed},
        "graph": {"n": 8, "r": 2, "m": 8},
        "outcome": {"branch": "cover", "cover": {"covered_count": 8}},
        "solution": {"objective": 0.2},
        "cut": {"expansion": expansion},
        "baseline": {"expansion": 0.25},
        "brute_phi": None,
        "ratios": {"expansion_over_sdp": expansion / 0.2, "expansion_over_brute_phi": None},
    }


class TestGenerate:
    """The ``generate`` command."""

    def test_cycle_to_stdout(self, capsys):
        assert main(["generate", "--family", "cycle", "--n", "8"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "8 2 8"

    def test_cluster_to_file(self, tmp_path):
        out = tmp_path / "graphs" / "clusters.txt"
        assert main(["generate", "--family", "cluster", "--blocks", "3", "--block-size", "4", "--out", str(out)]) == 0
        G = read_graph(out)
        assert (G.n, G.r) == (12, 3)

    def test_regular_needs_seed(self, capsys):
        assert main(["generate", "--family", "regular", "--n", "10", "--r", "3"]) == 2
        assert "--seed" in capsys.readouterr().err

    def test_regular_with_seed(self, tmp_path):
        out = tmp_path / "r.txt"
        assert main(["generate", "--family", "regular", "--n", "10", "--r", "3", "--seed", "4", "--out", str(out)]) == 0
        assert read_graph(out).r == 3


class TestPipelineArguments:
    """Parameter checks before any solver runs."""

    def test_missing_seed(self, c8_file, capsys):
        assert main(["pipeline", "--graph", str(c8_file)]) == 2
        assert "seed" in capsys.readouterr().err

    def test_eps_above_half(self, c8_file):
        assert main(["pipeline", "--graph", str(c8_file), "--seed", "1", "--eps", "0.75"]) == 2

    def test_k_out_of_range(self, c8_file):
        assert main(["pipeline", "--graph", str(c8_file), "--seed", "1", "--k", "0"]) == 2

    def test_missing_graph_file(self, tmp_path, capsys):
        assert main(["pipeline", "--graph", str(tmp_path / "absent.txt"), "--seed", "1"]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_invalid_mode(self, c8_file):
        with pytest.raises(SystemExit):
            main(["pipeline", "--graph", str(c8_file), "--seed", "1", "--mode", "spectral"])

    def test_malformed_graph(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("4 2 4\n0 1\n1 0\n2 3\n3 2\n")
        assert main(["diagnose", "--graph", str(path)]) == 2
        assert "line 3" in capsys.readouterr().err


class TestDiagnoseCommand:
    """The ``diagnose`` command end to end."""

    def test_report_matches_schema(self, c8_file, tmp_path):
        out = tmp_path / "diag.json"
        assert main(["diagnose", "--graph", str(c8_file), "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        validate_report(report)
        assert report["command"] == "diagnose"
        assert report["brute_phi"]["value_exact"] == "1/4"


class TestEmitPlotdata:
    """Collection of pipeline reports into CSV."""

    def test_empty_directory(self, tmp_path):
        text = emit_plotdata(str(tmp_path))
        assert text.splitlines() == [",".join(["k"] + [c for c in PLOT_COLUMNS if c != "k"])]

    def test_missing_directory(self, tmp_path):
        with pytest.raises(InvalidArgumentError):
            emit_plotdata(str(tmp_path / "absent"))
        assert main(["emit-plotdata", "--reports", str(tmp_path / "absent")]) == 2

    def test_rows_sorted_by_column(self, tmp_path):
        for name, (k, seed, expansion) in {"a": (3, 1, 0.3), "b": (1, 2, 0.25), "c": (1, 0, 0.5)}.items():
            (tmp_path / f"{name}.json").write_text(json.dumps(fake_report(k, seed, expansion)))
        (tmp_path / "diag.json").write_text(json.dumps({"command": "diagnose"}))
        rows = list(csv.DictReader(io.StringIO(emit_plotdata(str(tmp_path)))))
        assert [(row["k"], row["seed"]) for row in rows] == [("1", "0"), ("1", "2"), ("3", "1")]
        assert rows[0]["brute_phi"] == ""
        assert rows[0]["coverage"] == "8"

    def test_sort_column_first(self, tmp_path):
        (tmp_path / "a.json").write_text(json.dumps(fake_report(2, 5, 0.3)))
        header = emit_plotdata(str(tmp_path), x="expansion").splitlines()[0]
        assert header.split(",")[0] == "expansion"


class TestSchemaCommand:
    """The ``schema`` command."""

    def test_prints_schema(self, capsys):
        assert main(["schema"]) == 0
        schema = json.loads(capsys.readouterr().out)
        assert schema["title"] == "sparsecut report"
        assert schema["$schema"].endswith("2020-12/schema")
