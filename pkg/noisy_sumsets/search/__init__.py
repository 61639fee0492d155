"""
Sum-free search for noisy-sumsets.
The sum-free predicate, the exact optimizer and the witness constructors.
"""

from .sumfree import (
    SearchResult,
    SumFreeKernel,
    SumFreeParams,
    brute_force_mu,
    build_0s_witness,
    interval_sumset_bounds,
    is_redundant,
    is_sumfree,
    longest_interval,
    search_mu,
    sumfree_table,
    table_mu,
)

__all__ = [
    "SumFreeParams",
    "SearchResult",
    "SumFreeKernel",
    "is_sumfree",
    "search_mu",
    "brute_force_mu",
    "sumfree_table",
    "table_mu",
    "longest_interval",
    "interval_sumset_bounds",
    "build_0s_witness",
    "is_redundant",
]
