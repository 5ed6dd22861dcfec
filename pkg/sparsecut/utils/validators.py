"""Pydantic validation models for sparsecut experiments and reports."""

from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel, model_validator

from .enum import PipelineMode

COMMANDS = ("diagnose", "pipeline", "emit-plotdata", "generate")
RANDOMIZED_COMMANDS = ("pipeline",)
# Commands whose runs pass eps to the Gaussian dimension reduction.
REDUCTION_COMMANDS = ("pipeline",)


class ExperimentConfig(BaseModel):
    """Model representing one CLI invocation.

    Attributes:
        command: The subcommand being run.
        graph: Path of the input graph file.
        mode: Structure pipeline and rounding path.
        k: Number of cover sets is ``2k``.
        eps: Coverage loss.
        delta: Cover diameter under ``d^2_x``.
        tol: SDP feasibility tolerance.
        seed: Root seed; mandatory for randomized commands.
        best_of: Seeds tried per structure call.
        out: Output path.
    """
    model_config = ConfigDict(extra="forbid")

    command: Literal["diagnose", "pipeline", "emit-plotdata", "generate"]
    graph: Optional[str] = None
    mode: PipelineMode = PipelineMode.Lambda
    k: int = Field(default=2, ge=1, le=64)
    eps: float = Field(default=0.25, gt=0.0, lt=1.0)
    delta: float = Field(default=0.5, gt=0.0, lt=1.0)
    tol: float = Field(default=1e-4, gt=0.0)
    seed: Optional[int] = Field(default=None, ge=0)
    best_of: int = Field(default=1, ge=1)
    out: Optional[str] = None

    @model_validator(mode="after")
    def check_command_ranges(self) -> "ExperimentConfig":
        if self.command in RANDOMIZED_COMMANDS and self.seed is None:
            raise ValueError(f"--seed is required for '{self.command}'")
        if self.command in REDUCTION_COMMANDS and self.eps > 0.5:
            raise ValueError(f"eps must be at most 1/2 for '{self.command}', got {self.eps}")
        if self.command in ("diagnose", "pipeline") and not self.graph:
            raise ValueError(f"--graph is required for '{self.command}'")
        return self

    def to_report(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class CutReport(BaseModel):
    S: List[int]
    expansion: float = Field(ge=0.0)
    expansion_exact: str
    cut_edges: int = Field(ge=0)
    method: str
    seed: Optional[int] = None
    trace: Dict[str, Any] = {}


class SolutionReport(BaseModel):
    """Summary of an SDP solution; vectors are written separately."""
    n: int = Field(ge=2)
    m: int = Field(ge=1)
    objective: float
    kind: str
    feasibility: Dict[str, Any]


class OutcomeReport(BaseModel):
    branch: Literal["cover", "certificate"]
    cover: Optional[Dict[str, Any]] = None
    certificate: Optional[Dict[str, Any]] = None
    trace: Dict[str, Any] = {}
    verification: Dict[str, Any] = {}

    @model_validator(mode="after")
    def check_branch(self) -> "OutcomeReport":
        populated = self.cover if self.branch == "cover" else self.certificate
        other = self.certificate if self.branch == "cover" else self.cover
        if populated is None or other is not None:
            raise ValueError(f"branch '{self.branch}' must populate exactly its own field")
        return self


class GraphSummary(BaseModel):
    n: int = Field(ge=2)
    r: int = Field(ge=1)
    m: int = Field(ge=1)


class Ratios(BaseModel):
    expansion_over_sdp: Optional[float] = None
    expansion_over_brute_phi: Optional[float] = None
    baseline_over_sdp: Optional[float] = None


class PipelineReport(BaseModel):
    """Full record of one ``pipeline`` run."""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: Literal[1] = Field(default=1, alias="schema")
    command: Literal["pipeline"] = "pipeline"
    timestamp: str
    config: Dict[str, Any]
    settings: Dict[str, Any]
    graph: GraphSummary
    solution: SolutionReport
    outcome: OutcomeReport
    attempts: List[Dict[str, Any]]
    cut: CutReport
    baseline: CutReport
    sa: Optional[Dict[str, Any]] = None
    brute_phi: Optional[float] = None
    ratios: Ratios


class DiagnoseReport(BaseModel):
    """Spectral and oracle facts about a graph."""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: Literal[1] = Field(default=1, alias="schema")
    command: Literal["diagnose"] = "diagnose"
    timestamp: str
    config: Dict[str, Any]
    graph: GraphSummary
    spectrum_prefix: List[float]
    trace_identity: float
    max_residual: float
    threshold_rank: Dict[str, int]
    cheeger: Dict[str, Any]
    brute_phi: Optional[Dict[str, Any]] = None
    brute_phi_k: Dict[str, Optional[Dict[str, Any]]] = {}
    brute_sse: Dict[str, Optional[Dict[str, Any]]] = {}


class Report(RootModel[Annotated[Union[PipelineReport, DiagnoseReport], Field(discriminator="command")]]):
    """Any report the CLI writes; the published schema is generated from this model."""


def report_schema() -> Dict[str, Any]:
    schema = Report.model_json_schema(by_alias=True)
    schema["$schema"] = "https://json-schema.org/draft/2020-12/schema"
    schema["title"] = "sparsecut report"
    return schema
