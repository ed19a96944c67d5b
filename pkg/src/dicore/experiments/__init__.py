"""Monte Carlo experiment harnesses, their configuration, and statistics."""

from .config import (
    ExperimentSpec,
    reference_k0,
    reference_k1,
    window_bounds,
    window_satisfied,
)
from .harnesses import (
    MAX_ACYCLIC_N,
    exp_common_neighbors,
    exp_core_fraction,
    exp_max_acyclic,
    exp_neighbors,
    exp_pair_contraction,
    exp_subset_arcs,
    exp_tail_vs_bound,
    exp_threshold_sweep,
    largest_acyclic_set_size,
    pair_from_index,
    sample_k_of_n,
)
from .runner import ExperimentTable, map_trials
from .stats import StatSummary, fold

__all__ = [
    "ExperimentSpec",
    "ExperimentTable",
    "MAX_ACYCLIC_N",
    "StatSummary",
    "exp_common_neighbors",
    "exp_core_fraction",
    "exp_max_acyclic",
    "exp_neighbors",
    "exp_pair_contraction",
    "exp_subset_arcs",
    "exp_tail_vs_bound",
    "exp_threshold_sweep",
    "fold",
    "largest_acyclic_set_size",
    "map_trials",
    "pair_from_index",
    "reference_k0",
    "reference_k1",
    "sample_k_of_n",
    "window_bounds",
    "window_satisfied",
]
