from .solution import EmbeddingSolution, FeasibilityReport, SASolution, pattern_bits
from .feasibility import check_feasibility, is_negative_type
from .arv import embed_integral_cut, solve_arv
from .sherali_adams import integral_sa_witness, sa_residuals, sample_cut_metric, sample_pattern, solve_sa_for_set

__all__ = [
    "EmbeddingSolution", "FeasibilityReport", "SASolution", "pattern_bits",
    "check_feasibility", "is_negative_type", "embed_integral_cut", "solve_arv",
    "integral_sa_witness", "sa_residuals", "sample_cut_metric", "sample_pattern", "solve_sa_for_set",
]
