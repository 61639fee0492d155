"""
Closed-form bounds on the largest C-(k, l)-sum-free subset of Z/nZ.

Every function returns exact integers. ``BoundsReport`` carries the
intermediates (delta, chi, r and the per-divisor coset terms) next to the
clamped bounds so that reports can show how a value was reached.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations
from math import gcd
from typing import Any, Dict, Optional

from sympy import isprime

from ..core.cyclic import CyclicSet, divisors, popcount, rotate_mask, scale, units
from ..production.error_handling import InvalidParametersError, ModulusMismatchError


class BoundMethod(Enum):
    """Which closed form produced a report."""

    PREFIX_INTERVAL = "prefix_interval"
    TWO_ELEMENT = "two_element"
    TWO_ELEMENT_UNIT = "two_element_unit"
    ZERO_P = "zero_p"
    CLASSICAL = "classical"
    GENERIC = "generic"


@dataclass(frozen=True)
class BoundsReport:
    """Lower and upper bounds with every intermediate quantity."""

    lower: int
    upper: int
    delta: int
    method: BoundMethod
    raw_lower: int
    raw_upper: int
    chi: Optional[int] = None
    r: Optional[int] = None
    f: Optional[int] = None
    coset_term: Optional[int] = None
    interval_c: Optional[int] = None
    refined_lower: Optional[int] = None
    per_divisor_terms: Dict[int, int] = field(default_factory=dict)

    @property
    def gap(self) -> int:
        return self.upper - self.lower

    @property
    def is_tight(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "raw_lower": self.raw_lower,
            "raw_upper": self.raw_upper,
            "delta": self.delta,
            "chi": self.chi,
            "r": self.r,
            "f": self.f,
            "coset_term": self.coset_term,
            "interval_c": self.interval_c,
            "refined_lower": self.refined_lower,
            "per_divisor_terms": {
                str(d): term for d, term in sorted(self.per_divisor_terms.items())
            },
            "method": self.method.value,
        }


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_kl(k: int, ell: int) -> None:
    if ell < 1 or k <= ell:
        raise InvalidParametersError(f"need k > l >= 1, got k={k}, l={ell}")


def _check_n(n: int) -> None:
    if n < 1:
        raise InvalidParametersError(f"modulus must be positive, got {n}")


def chi(n: int, k: int, ell: int, c: int) -> int:
    """floor((n + 2(c-2)) / (k+l)) - (c-2); may be non-positive for small n."""
    _check_n(n)
    _check_kl(k, ell)
    if c < 2:
        raise InvalidParametersError(f"prefix noise needs c >= 2, got {c}")
    return (n + 2 * (c - 2)) // (k + ell) - (c - 2)


def torus_upper(n: int, k: int, ell: int) -> int:
    """floor(n / (k+l)), the upper bound for noise {0, 1}."""
    _check_n(n)
    _check_kl(k, ell)
    return n // (k + ell)


def bounds_prefix_noise(n: int, k: int, ell: int, c: int) -> BoundsReport:
    """Bounds for the interval noise C = {0, ..., c-1}; the two sides differ by at most 1."""
    upper_raw = chi(n, k, ell, c)
    delta = gcd(n, k - ell)
    assert delta > 0

    head = (n + 2 * (c - 2)) // (k + ell)
    r = (-k * upper_raw - (k - 1) * (c - 2)) % delta
    assert r == (-k * head + (c - 2)) % delta

    lower_raw = (n + 2 * (c - 2) - r) // (k + ell) - (c - 2)
    return BoundsReport(
        lower=max(0, lower_raw),
        upper=max(0, upper_raw),
        delta=delta,
        method=BoundMethod.PREFIX_INTERVAL,
        raw_lower=lower_raw,
        raw_upper=upper_raw,
        chi=upper_raw,
        r=r,
        interval_c=c,
    )


def bajnok_matzke_terms(n: int, k: int, ell: int) -> Dict[int, int]:
    """Per-divisor terms of the classical maximum, keyed by divisor d of n."""
    _check_n(n)
    _check_kl(k, ell)
    terms = {}
    for d in divisors(n):
        delta_d = gcd(d, k - ell)
        f_d = _ceil_div(d - delta_d, k + ell)
        r_d = (ell * f_d) % delta_d
        terms[d] = _ceil_div(d - (delta_d - r_d), k + ell) * (n // d)
    return terms


def bajnok_matzke(n: int, k: int, ell: int) -> int:
    """Largest (k, l)-sum-free subset of Z/nZ (noise {0})."""
    return max(bajnok_matzke_terms(n, k, ell).values())


def diamanda_yap(n: int) -> int:
    """Largest sum-free subset of Z/nZ."""
    return bajnok_matzke(n, 2, 1)


def hamidoune_plagne(n: int, k: int, ell: int) -> int:
    """Largest (k, l)-sum-free subset of Z/nZ when gcd(n, k-l) = 1."""
    _check_kl(k, ell)
    if gcd(n, k - ell) != 1:
        raise InvalidParametersError(f"gcd({n}, {k - ell}) must be 1")
    return bajnok_matzke(n, k, ell)


def bier_chin_prime(p: int, k: int, ell: int) -> int:
    """Largest (k, l)-sum-free subset of Z/pZ for a prime p."""
    _check_kl(k, ell)
    if not isprime(p):
        raise InvalidParametersError(f"{p} is not prime")
    if (k - ell) % p == 0:
        return 0
    return _ceil_div(p - 1, k + ell)


def coset_terms(n: int, k: int, ell: int, d: int) -> Dict[int, int]:
    """mu_{k,l}(Z/eZ) * n/e for every e | d, the sizes of lifted coset unions."""
    if d < 1 or n % d:
        raise InvalidParametersError(f"{d} does not divide {n}")
    return {e: bajnok_matzke(e, k, ell) * (n // e) for e in divisors(d)}


def coset_term(n: int, k: int, ell: int, d: int) -> int:
    """Largest lifted coset union over e | d."""
    return max(coset_terms(n, k, ell, d).values())


def bounds_two_element(n: int, k: int, ell: int, s: int) -> BoundsReport:
    """Bounds for the two-element noise C = {0, s}.

    The lower bound is the larger of the coset term and the interval bound for
    c = s+1. Since {0, s} is shift-mult-equivalent to {0, gcd(s, n)}, the
    interval bound for c = gcd(s, n)+1 also holds; it is reported separately
    as ``refined_lower``.
    """
    _check_n(n)
    _check_kl(k, ell)
    if not 1 <= s < n:
        raise InvalidParametersError(f"need 1 <= s < n, got s={s}, n={n}")

    d = gcd(s, n)
    if d == 1:
        unit = bounds_prefix_noise(n, k, ell, 2)
        return replace(
            unit,
            method=BoundMethod.TWO_ELEMENT_UNIT,
            coset_term=0,
            per_divisor_terms={1: 0},
        )

    terms = coset_terms(n, k, ell, d)
    coset = max(terms.values())

    interval = bounds_prefix_noise(n, k, ell, s + 1)
    lower = max(coset, interval.lower)
    refined = lower
    if d != s:
        refined = max(lower, bounds_prefix_noise(n, k, ell, d + 1).lower)

    upper = max(coset, n // (k + ell))
    return BoundsReport(
        lower=lower,
        upper=upper,
        delta=interval.delta,
        method=BoundMethod.TWO_ELEMENT,
        raw_lower=max(coset, interval.raw_lower),
        raw_upper=upper,
        chi=interval.chi,
        r=interval.r,
        coset_term=coset,
        interval_c=interval.interval_c,
        refined_lower=refined,
        per_divisor_terms=terms,
    )


def bounds_zero_p(n: int, k: int, ell: int, p: int) -> BoundsReport:
    """Bounds for C = {0, p} with p a prime divisor of n."""
    _check_n(n)
    _check_kl(k, ell)
    if not isprime(p):
        raise InvalidParametersError(f"{p} is not prime")
    if n % p or p >= n:
        raise InvalidParametersError(f"{p} must be a proper divisor of {n}")

    f = bier_chin_prime(p, k, ell)
    coset = f * (n // p)
    interval = bounds_prefix_noise(n, k, ell, p + 1)
    upper = max(coset, n // (k + ell))
    return BoundsReport(
        lower=max(coset, interval.lower),
        upper=upper,
        delta=interval.delta,
        method=BoundMethod.ZERO_P,
        raw_lower=max(coset, interval.raw_lower),
        raw_upper=upper,
        chi=interval.chi,
        r=interval.r,
        f=f,
        coset_term=coset,
        interval_c=p + 1,
        per_divisor_terms={1: 0, p: coset},
    )


def is_cyclic_interval(c: CyclicSet) -> bool:
    """True when C is a run of consecutive residues (or empty or full)."""
    starts = c.mask & ~rotate_mask(c.mask, 1, c.modulus)
    return popcount(starts) <= 1


def unit_progression_multiplier(c: CyclicSet) -> Optional[int]:
    """A unit g with g*C a cyclic interval, or None when C is no unit-step progression."""
    for g in units(c.modulus):
        if is_cyclic_interval(scale(c, g)):
            return g
    return None


def bounds_for_noise(n: int, k: int, ell: int, noise: CyclicSet) -> BoundsReport:
    """Best available bounds for an arbitrary noise set.

    Closed forms exist for singletons, two-element sets and the shift-mult images
    of intervals. Anything else gets the trivial lower bound and the smallest
    two-element upper bound over pairs inside C.
    """
    _check_kl(k, ell)
    if noise.modulus != n:
        raise ModulusMismatchError(f"noise lives mod {noise.modulus}, not mod {n}")
    size = len(noise)
    if size == 0:
        raise InvalidParametersError("noise set must be nonempty")

    if size == 1:
        terms = bajnok_matzke_terms(n, k, ell)
        value = max(terms.values())
        return BoundsReport(
            lower=value,
            upper=value,
            delta=gcd(n, k - ell),
            method=BoundMethod.CLASSICAL,
            raw_lower=value,
            raw_upper=value,
            per_divisor_terms=terms,
        )

    if size == 2:
        x, y = noise.elements
        return bounds_two_element(n, k, ell, y - x)

    if unit_progression_multiplier(noise) is not None:
        return bounds_prefix_noise(n, k, ell, size)

    classical = bajnok_matzke(n, k, ell)
    upper = min(
        [classical]
        + [bounds_two_element(n, k, ell, y - x).upper for x, y in combinations(noise.elements, 2)]
    )
    return BoundsReport(
        lower=0,
        upper=upper,
        delta=gcd(n, k - ell),
        method=BoundMethod.GENERIC,
        raw_lower=0,
        raw_upper=upper,
    )


def kneser_noisy_lower(n: int, size_a: int, size_b: int, c: int) -> int:
    """Lower bound min{n, |A| + |B| + (c-2)} on |A +_C B| for C = {0, ..., c-1}."""
    if c < 2:
        raise InvalidParametersError(f"prefix noise needs c >= 2, got {c}")
    return min(n, size_a + size_b + c - 2)
