"""Domatic partitions of (k, C)-regular graphs via Local Lemma resampling."""

from .graph import (
    Graph,
    degree_profile,
    from_edge_list,
    generate_circulant,
    generate_random_regular,
    is_dominating_set,
    short_cycles,
    verify_domatic_partition,
)
from .oracle import domatic_number_exact, min_dominating_set_exact, two_partition_baseline
from .semirandom import compute_params, naive_domatic, solve

__all__ = [
    "Graph",
    "compute_params",
    "degree_profile",
    "domatic_number_exact",
    "from_edge_list",
    "generate_circulant",
    "generate_random_regular",
    "is_dominating_set",
    "min_dominating_set_exact",
    "naive_domatic",
    "short_cycles",
    "solve",
    "two_partition_baseline",
    "verify_domatic_partition",
]
