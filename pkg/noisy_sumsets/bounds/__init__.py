"""Closed-form bounds on the largest noisy sum-free size."""

from .formulas import (
    BoundMethod,
    BoundsReport,
    bajnok_matzke,
    bier_chin_prime,
    bounds_for_noise,
    bounds_prefix_noise,
    bounds_two_element,
    bounds_zero_p,
    chi,
    coset_term,
    coset_terms,
    diamanda_yap,
    hamidoune_plagne,
    kneser_noisy_lower,
)

__all__ = [
    "BoundMethod",
    "BoundsReport",
    # Noisy bounds
    "chi",
    "bounds_prefix_noise",
    "bounds_two_element",
    "bounds_zero_p",
    "bounds_for_noise",
    "coset_term",
    "coset_terms",
    "kneser_noisy_lower",
    # Classical values
    "bajnok_matzke",
    "diamanda_yap",
    "hamidoune_plagne",
    "bier_chin_prime",
]
