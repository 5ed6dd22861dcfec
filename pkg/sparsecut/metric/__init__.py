from .distance import (
    DistanceMatrix,
    DistortionReport,
    ball,
    diameter,
    dist_to_set,
    dist_to_set_all,
    distorted_pairs,
    energy,
    pair_sum,
    pairwise_euclidean,
    pairwise_squared,
    squared_distances,
    triangle_violation,
)
from .reduction import ReductionResult, gaussian_dim_reduce, gaussian_projection, target_dimension
from .embedding import embed_l22_to_l2, frechet_coordinates

__all__ = [
    "DistanceMatrix", "DistortionReport", "ball", "diameter", "dist_to_set", "dist_to_set_all",
    "distorted_pairs", "energy", "pair_sum", "pairwise_euclidean", "pairwise_squared",
    "squared_distances", "triangle_violation",
    "ReductionResult", "gaussian_dim_reduce", "gaussian_projection", "target_dimension",
    "embed_l22_to_l2", "frechet_coordinates",
]
