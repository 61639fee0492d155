"""
Core types for noisy-sumsets.
Subsets of Z/nZ, their sums, and tool configuration.
"""

from .config import SearchSettings, ToolConfig, load_config_from_file, resolve_settings
from .cyclic import (
    MAX_MODULUS,
    CyclicSet,
    Subgroup,
    difference_set,
    divisors,
    interval,
    iterated_noisy,
    lift,
    make_set,
    minkowski_sum,
    negate,
    noisy_sum,
    project,
    scale,
    stabilizer,
    translate,
    unit_inverse,
    units,
)

__all__ = [
    # Sets
    "MAX_MODULUS",
    "CyclicSet",
    "Subgroup",
    "make_set",
    "interval",
    # Operations
    "minkowski_sum",
    "noisy_sum",
    "iterated_noisy",
    "negate",
    "difference_set",
    "stabilizer",
    "translate",
    "scale",
    "project",
    "lift",
    # Arithmetic
    "divisors",
    "units",
    "unit_inverse",
    # Configuration
    "ToolConfig",
    "SearchSettings",
    "load_config_from_file",
    "resolve_settings",
]
