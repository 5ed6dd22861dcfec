from .frechet import best_cut, cut_key, fact_ratio, frechet_round, frechet_sweep
from .wellspread import WellSpreadSet, is_well_spread, wellspread_extract
from .separated import (
    exhaustive_candidates,
    far_pair_mass,
    mds_coordinates,
    projection_candidates,
    separated_sets,
    separation_score,
)
from .arv import covered_well_spread, round_arv, split_by_cover
from .sherali_adams import assign_centers, cover_centers, round_sa

__all__ = [
    "best_cut", "cut_key", "fact_ratio", "frechet_round", "frechet_sweep",
    "WellSpreadSet", "is_well_spread", "wellspread_extract",
    "exhaustive_candidates", "far_pair_mass", "mds_coordinates", "projection_candidates",
    "separated_sets", "separation_score",
    "covered_well_spread", "round_arv", "split_by_cover",
    "assign_centers", "cover_centers", "round_sa",
]
