from .random_partition import (
    PARTITION_SCHEMES,
    Partition,
    estimate_lipschitz,
    interior,
    lipschitz_partition,
    measure_padding,
    padded_partition,
    separation_frequencies,
)
from .covers import Certificate, Cover, bump_functions, check_disjoint_sets, cover_transfer, merge_groups, merge_small

__all__ = [
    "PARTITION_SCHEMES", "Partition", "estimate_lipschitz", "interior", "lipschitz_partition",
    "measure_padding", "padded_partition", "separation_frequencies",
    "Certificate", "Cover", "bump_functions", "check_disjoint_sets", "cover_transfer", "merge_groups", "merge_small",
]
