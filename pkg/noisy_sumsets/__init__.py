"""Noisy Sumsets

Exact computation of noisy Minkowski sums over Z/nZ: the largest C-(k, l)-sum-free
sets, the closed-form bounds on their size, and the sweeps that check one against
the other.
"""

__version__ = "0.1.0"
__author__ = "Noisy Sumsets Team"

from .bounds.formulas import (
    BoundsReport,
    bounds_for_noise,
    bounds_prefix_noise,
    bounds_two_element,
    bounds_zero_p,
)
from .core.cyclic import (
    CyclicSet,
    Subgroup,
    iterated_noisy,
    make_set,
    minkowski_sum,
    noisy_sum,
)
from .equivalence.orbits import are_equivalent, canonicalize, size3_orbit
from .search.sumfree import SearchResult, SumFreeParams, brute_force_mu, is_sumfree

__all__ = [
    # Sets and sums
    "CyclicSet",
    "Subgroup",
    "make_set",
    "minkowski_sum",
    "noisy_sum",
    "iterated_noisy",
    # Oracle
    "SumFreeParams",
    "SearchResult",
    "is_sumfree",
    "brute_force_mu",
    # Bounds
    "BoundsReport",
    "bounds_prefix_noise",
    "bounds_two_element",
    "bounds_zero_p",
    "bounds_for_noise",
    # Equivalence
    "canonicalize",
    "are_equivalent",
    "size3_orbit",
]
