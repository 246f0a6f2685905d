"""Nonparametric predictive inference for ordered future observations.

Exact lower and upper probabilities that the next observation from each
of several groups comes out in a given order, together with cheap bounds,
two heuristics and a brute-force reference.  All values are exact
rationals.
"""

from __future__ import annotations

from .applications import OrderingReport, ordering_report, rss_perfect_ordering, vus_bounds
from .domain import (
    ArityError,
    BudgetExceeded,
    Cell,
    EmptyGroup,
    EmptyInput,
    GroupSample,
    MultiGroupData,
    NPIError,
    RationalProb,
    ShapeError,
    SubIntervalPartition,
    TieError,
    partition,
    read_long_csv,
    to_exact,
    validate_and_sort,
)
from .multi_group import (
    DEFAULT_BUDGET,
    AlgorithmA,
    AlgorithmB,
    FourBounds,
    MassAssignment,
    algorithm_a,
    algorithm_b,
    assignment_count,
    bounds,
    complexity_estimate,
    empirical_h,
    exact_search,
    extreme_assignment,
    perfect_reference,
    permutation_scan,
)
from .oracle import OracleResult, oracle_min_max
from .three_group import KjProfile, exact_three, kj_profile

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "BudgetExceeded",
    "Cell",
    "EmptyGroup",
    "EmptyInput",
    "GroupSample",
    "MultiGroupData",
    "NPIError",
    "RationalProb",
    "ShapeError",
    "SubIntervalPartition",
    "TieError",
    "partition",
    "read_long_csv",
    "to_exact",
    "validate_and_sort",
    "KjProfile",
    "kj_profile",
    "exact_three",
    "DEFAULT_BUDGET",
    "AlgorithmA",
    "AlgorithmB",
    "FourBounds",
    "MassAssignment",
    "algorithm_a",
    "algorithm_b",
    "assignment_count",
    "bounds",
    "complexity_estimate",
    "empirical_h",
    "exact_search",
    "extreme_assignment",
    "perfect_reference",
    "permutation_scan",
    "OracleResult",
    "oracle_min_max",
    "OrderingReport",
    "ordering_report",
    "rss_perfect_ordering",
    "vus_bounds",
]
