"""Induced trees of G(n, p): exact counters, thresholds and solvers."""

from ._core import (
    BudgetExceededError,
    DriftTail,
    Graph,
    LogReal,
    SolveResult,
    ThresholdReport,
    brute_force_covering_trees,
    brute_force_max_induced_tree,
    composition_weight_bound,
    composition_weight_sum,
    compute_threshold,
    count_covering_trees,
    count_fortified_trees,
    count_induced_trees,
    count_labeled_trees,
    count_maximal_trees,
    count_overlapping_tree_pairs,
    drift_tail,
    enumerate_trees,
    expectation_ratio,
    fortified_damping_factor,
    fortified_ratio,
    is_induced_tree,
    log_binomial,
    log_expected_tree_count,
    log_factorial,
    log_gamma,
    markov_tail,
    max_induced_tree,
    maximal_ratio,
    pair_edge_log_probability,
    pair_expectation_ratio,
    sample_gnp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
