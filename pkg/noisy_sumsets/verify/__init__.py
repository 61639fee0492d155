"""
Verification for noisy-sumsets.
Bounds-versus-oracle sweeps, the conjecture scan and seeded property suites.
"""

from .harness import (
    NoiseKind,
    ScanRanges,
    SweepRanges,
    SweepRow,
    conjecture_scan,
    counterexamples,
    sandwich_sweep,
)
from .properties import SuiteReport, run_all_suites

__all__ = [
    # Sweeps
    "NoiseKind",
    "SweepRow",
    "ScanRanges",
    "SweepRanges",
    "conjecture_scan",
    "sandwich_sweep",
    "counterexamples",
    # Property suites
    "SuiteReport",
    "run_all_suites",
]
