from .agent import SparsestCutPipeline
from .config import Config
from .errors import SparseCutError
from .graph import Cut, Graph, read_graph
from .sdp import EmbeddingSolution, SASolution, solve_arv, solve_sa_for_set
from .structure import StructureOutcome, cover_via_lambda, cover_via_phi
from .rounding import round_arv, round_sa

__all__ = [
    'SparsestCutPipeline',
    'Config',
    'SparseCutError',
    'Cut',
    'Graph',
    'read_graph',
    'EmbeddingSolution',
    'SASolution',
    'solve_arv',
    'solve_sa_for_set',
    'StructureOutcome',
    'cover_via_lambda',
    'cover_via_phi',
    'round_arv',
    'round_sa',
]
