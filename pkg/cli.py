"""
Provides a command line interface for the SparsestCutPipeline class.

Usage:

```shell
python cli.py diagnose --graph graphs/c8.txt
python cli.py pipeline --graph graphs/clusters.txt --mode lambda --k 2 --eps 0.25 --delta 0.5 --seed 7 --out report.json
python cli.py emit-plotdata --reports reports/ --x k --out ratio_vs_k.csv
python cli.py generate --family cluster --blocks 4 --block-size 5 --out graphs/clusters.txt
python cli.py schema --out schemas/report.schema.json
```

"""
import asyncio
import argparse
import csv
import io
import json
import sys
from argparse import RawTextHelpFormatter
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError

from sparsecut import SparsestCutPipeline
from sparsecut.config import Config
from sparsecut.errors import InvalidArgumentError, SparseCutError
from sparsecut.graph import (
    cluster_graph, complete, cycle, disjoint_union, format_graph, random_regular, read_graph, write_graph,
)
from sparsecut.utils.enum import PipelineMode
from sparsecut.utils.logger import get_formatted_logger
from sparsecut.utils.logging_config import setup_run_logging
from sparsecut.utils.serialization import dumps, solution_to_dict
from sparsecut.utils.validators import ExperimentConfig, report_schema

PLOT_COLUMNS = [
    "mode", "k", "eps", "delta", "seed", "n", "branch", "coverage", "sdp", "expansion", "brute_phi",
    "expansion_over_sdp", "expansion_over_brute_phi", "baseline_expansion",
]
GENERATE_FAMILIES = ["cycle", "complete", "disjoint-complete", "cluster", "regular"]

# =============================================================================
# CLI
# =============================================================================

cli = argparse.ArgumentParser(
    description="Sparsest cut SDP relaxations, structure covers and rounding.",
    # Enables the use of newlines in the help message
    formatter_class=RawTextHelpFormatter)

commands = cli.add_subparsers(dest="command", required=True)


def add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        type=str,
        help="JSON configuration file merged over the defaults.",
        default=None)
    parser.add_argument(
        "--out",
        type=str,
        help="Output path (stdout when omitted).",
        default=None)


# =====================================
# Command: diagnose
# =====================================

diagnose_cli = commands.add_parser(
    "diagnose",
    help="Spectrum, Cheeger sweep and brute-force expansions of a graph.",
    formatter_class=RawTextHelpFormatter)
diagnose_cli.add_argument("--graph", type=str, required=True, help="Graph file ('n r m' header, then 'u v' lines).")
add_common(diagnose_cli)

# =====================================
# Command: pipeline
# =====================================

mode_descriptions = {
    PipelineMode.Lambda.value: "spectral structure cover, ARV rounding",
    PipelineMode.Phi.value: "order-k expansion structure cover, ARV rounding",
    PipelineMode.SA.value: "spectral structure cover, Sherali-Adams rounding",
}

pipeline_cli = commands.add_parser(
    "pipeline",
    help="Solve the SDP, build a cover or certificate and round it to a cut.",
    formatter_class=RawTextHelpFormatter)
pipeline_cli.add_argument("--graph", type=str, required=True, help="Graph file.")
pipeline_cli.add_argument(
    "--mode",
    type=str,
    choices=[mode.value for mode in PipelineMode],
    default=PipelineMode.Lambda.value,
    help="Pipeline to run. Options:\n" + "\n".join(
        f"  {choice}: {description}" for choice, description in mode_descriptions.items()))
pipeline_cli.add_argument("--k", type=int, default=2, help="The cover has 2k sets (1 <= k <= 64).")
pipeline_cli.add_argument("--eps", type=float, default=0.25, help="Coverage loss, 0 < eps <= 1/2.")
pipeline_cli.add_argument("--delta", type=float, default=0.5, help="Cover diameter under d^2_x, 0 < delta < 1.")
pipeline_cli.add_argument("--seed", type=int, default=None, help="Root seed (required).")
pipeline_cli.add_argument("--tol", type=float, default=1e-4, help="SDP feasibility tolerance.")
pipeline_cli.add_argument("--best-of", type=int, default=None,
                          help="Seeds tried per structure call (default: BEST_OF_N from the config).")
pipeline_cli.add_argument("--solution-out", type=str, default=None, help="Also write the ARV solution as JSON.")
add_common(pipeline_cli)

# =====================================
# Command: emit-plotdata
# =====================================

plot_cli = commands.add_parser(
    "emit-plotdata",
    help="Collect pipeline reports into one CSV series.",
    formatter_class=RawTextHelpFormatter)
plot_cli.add_argument("--reports", type=str, required=True, help="Directory of pipeline report JSON files.")
plot_cli.add_argument("--x", type=str, default="k", choices=PLOT_COLUMNS, help="Column the rows are sorted by.")
add_common(plot_cli)

# =====================================
# Command: generate
# =====================================

generate_cli = commands.add_parser(
    "generate",
    help="Write a generated regular graph in the text format.",
    formatter_class=RawTextHelpFormatter)
generate_cli.add_argument("--family", type=str, choices=GENERATE_FAMILIES, required=True, help="Graph family.")
generate_cli.add_argument("--n", type=int, default=8, help="Vertex count (cycle, complete, regular).")
generate_cli.add_argument("--r", type=int, default=3, help="Degree (regular).")
generate_cli.add_argument("--blocks", type=int, default=2, help="Number of blocks (cluster, disjoint-complete).")
generate_cli.add_argument("--block-size", type=int, default=4, help="Block size (cluster, disjoint-complete).")
generate_cli.add_argument("--bridges", type=int, default=1, help="Rewired edges per block pair (cluster).")
generate_cli.add_argument("--seed", type=int, default=None, help="Seed (regular).")
add_common(generate_cli)

# =====================================
# Command: schema
# =====================================

schema_cli = commands.add_parser(
    "schema",
    help="Print the published JSON schema of the reports.",
    formatter_class=RawTextHelpFormatter)
add_common(schema_cli)

# =============================================================================
# Commands
# =============================================================================


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")
    print(f"Written to '{path}'", file=sys.stderr)


async def cmd_diagnose(args, cfg: Config) -> None:
    experiment = ExperimentConfig(command="diagnose", graph=args.graph, out=args.out)
    pipeline = SparsestCutPipeline(read_graph(args.graph), experiment, cfg)
    report = await pipeline.diagnose()
    write_output(dumps(report) + "\n", args.out)


async def cmd_pipeline(args, cfg: Config) -> None:
    experiment = ExperimentConfig(
        command="pipeline", graph=args.graph, mode=args.mode, k=args.k, eps=args.eps, delta=args.delta,
        tol=args.tol, seed=args.seed, best_of=args.best_of or cfg.best_of_n, out=args.out,
    )
    pipeline = SparsestCutPipeline(read_graph(args.graph), experiment, cfg)
    report = await pipeline.conduct_pipeline()
    write_output(dumps(report) + "\n", args.out)
    if args.solution_out:
        write_output(dumps(solution_to_dict(pipeline.solution)) + "\n", args.solution_out)


def plot_row(report: dict) -> dict:
    config = report["config"]
    outcome = report["outcome"]
    return {
        "mode": config["mode"],
        "k": config["k"],
        "eps": config["eps"],
        "delta": config["delta"],
        "seed": config["seed"],
        "n": report["graph"]["n"],
        "branch": outcome["branch"],
        "coverage": outcome["cover"]["covered_count"] if outcome["cover"] else -1,
        "sdp": report["solution"]["objective"],
        "expansion": report["cut"]["expansion"],
        "brute_phi": report["brute_phi"],
        "expansion_over_sdp": report["ratios"]["expansion_over_sdp"],
        "expansion_over_brute_phi": report["ratios"]["expansion_over_brute_phi"],
        "baseline_expansion": report["baseline"]["expansion"],
    }


def emit_plotdata(reports_dir: str, x: str = "k") -> str:
    """CSV (RFC 4180) with one row per pipeline report, sorted by column ``x`` then seed."""
    directory = Path(reports_dir)
    if not directory.is_dir():
        raise InvalidArgumentError(f"reports directory not found: {reports_dir}")
    rows = []
    for path in sorted(directory.glob("*.json")):
        report = json.loads(path.read_text(encoding="utf-8"))
        if report.get("command") == "pipeline":
            rows.append(plot_row(report))
    rows.sort(key=lambda row: (row[x] is None, row[x] if row[x] is not None else 0, row["seed"]))
    columns = [x] + [c for c in PLOT_COLUMNS if c != x]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns)
    writer.writeheader()
    for row in rows:
        writer.writerow({c: "" if row[c] is None else row[c] for c in columns})
    return buffer.getvalue()


async def cmd_emit_plotdata(args, cfg: Config) -> None:
    ExperimentConfig(command="emit-plotdata", out=args.out)
    write_output(emit_plotdata(args.reports, args.x), args.out)


def generate_graph(args):
    if args.family == "cycle":
        return cycle(args.n)
    if args.family == "complete":
        return complete(args.n)
    if args.family == "disjoint-complete":
        return disjoint_union(*(complete(args.block_size) for _ in range(args.blocks)))
    if args.family == "cluster":
        return cluster_graph(args.blocks, args.block_size, args.bridges)
    if args.seed is None:
        raise InvalidArgumentError("--seed is required for random regular graphs")
    return random_regular(args.n, args.r, args.seed)


async def cmd_generate(args, cfg: Config) -> None:
    ExperimentConfig(command="generate", seed=args.seed, out=args.out)
    G = generate_graph(args)
    if args.out is None:
        sys.stdout.write(format_graph(G))
    else:
        write_graph(G, args.out)
        print(f"Written to '{args.out}'", file=sys.stderr)


async def cmd_schema(args, cfg: Config) -> None:
    write_output(json.dumps(report_schema(), indent=2, sort_keys=True) + "\n", args.out)


COMMANDS = {
    "diagnose": cmd_diagnose,
    "pipeline": cmd_pipeline,
    "emit-plotdata": cmd_emit_plotdata,
    "generate": cmd_generate,
    "schema": cmd_schema,
}

# =============================================================================
# Main
# =============================================================================


async def run(args) -> int:
    """
    Run one subcommand. Library failures and invalid parameters exit with
    code 2 and a one-line message on stderr.
    """
    try:
        cfg = Config(args.config)
        get_formatted_logger(cfg.log_level)
        if cfg.json_event_log:
            setup_run_logging(cfg.log_dir)
        await COMMANDS[args.command](args, cfg)
    except SparseCutError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        print(f"error: invalid arguments: {messages}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    load_dotenv()
    args = cli.parse_args(argv)
    return asyncio.run(run(args))


if __name__ == "__main__":
    sys.exit(main())
