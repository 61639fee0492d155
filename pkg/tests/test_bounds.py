"""
Tests for the closed-form bounds.
"""

from math import gcd

import pytest

from noisy_sumsets.bounds.formulas import (
    BoundMethod,
    bajnok_matzke,
    bajnok_matzke_terms,
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
    torus_upper,
)
from noisy_sumsets.core.cyclic import make_set
from noisy_sumsets.production.error_handling import InvalidParametersError, ModulusMismatchError
from noisy_sumsets.search.sumfree import SumFreeParams, brute_force_mu


class TestPrefixNoise:
    """Test bounds for C = {0, ..., c-1}."""

    def test_forty_two(self):
        """Test n=40, (9,4), c=2: lower 2, upper 3, delta 5, r 3."""
        report = bounds_prefix_noise(40, 9, 4, 2)
        assert (report.lower, report.upper) == (2, 3)
        assert report.delta == 5
        assert report.r == 3
        assert report.chi == 3
        assert report.method is BoundMethod.PREFIX_INTERVAL

    def test_forty_three(self):
        """Test n=40, (9,4), c=3: lower 1, upper 2."""
        report = bounds_prefix_noise(40, 9, 4, 3)
        assert (report.lower, report.upper) == (1, 2)
        assert report.r == 4

    def test_torus_is_tight(self):
        """Test n=10, (2,1), c=2: both sides equal 3."""
        report = bounds_prefix_noise(10, 2, 1, 2)
        assert report.lower == report.upper == 3
        assert report.is_tight
        assert report.gap == 0
        assert torus_upper(10, 2, 1) == 3

    def test_clamped_at_zero(self):
        """Test that small n clamps negative raw values to 0."""
        report = bounds_prefix_noise(3, 2, 1, 6)
        assert report.raw_upper < 0
        assert report.lower == report.upper == 0

    def test_gap_at_most_one(self):
        """Test the gap and the coprime equality on a grid."""
        for n in range(1, 61):
            for k in range(2, 8):
                for ell in range(1, k):
                    for c in range(2, 6):
                        report = bounds_prefix_noise(n, k, ell, c)
                        assert 0 <= report.gap <= 1
                        if gcd(n, k - ell) == 1:
                            assert report.is_tight

    def test_chi(self):
        """Test the upper formula and its validation."""
        assert chi(40, 9, 4, 3) == 2
        with pytest.raises(InvalidParametersError):
            chi(40, 9, 4, 1)
        with pytest.raises(InvalidParametersError):
            chi(40, 4, 9, 2)

    def test_to_dict(self):
        """Test that report dictionaries carry exact integers and string keys."""
        data = bounds_two_element(12, 2, 1, 6).to_dict()
        assert data["method"] == "two_element"
        assert all(isinstance(key, str) for key in data["per_divisor_terms"])
        assert isinstance(data["lower"], int)


class TestClassical:
    """Test the classical noise-free maxima."""

    @pytest.mark.parametrize(
        "n,k,ell,expected", [(10, 2, 1, 5), (7, 2, 1, 2), (4, 3, 1, 1), (6, 3, 1, 2)]
    )
    def test_bajnok_matzke(self, n, k, ell, expected):
        """Test known values of the classical maximum."""
        assert bajnok_matzke(n, k, ell) == expected

    def test_terms_cover_divisors(self):
        """Test that there is one term per divisor."""
        assert sorted(bajnok_matzke_terms(12, 2, 1)) == [1, 2, 3, 4, 6, 12]

    def test_specializations(self):
        """Test the sum-free and coprime special cases."""
        assert diamanda_yap(10) == 5
        assert hamidoune_plagne(7, 2, 1) == 2
        with pytest.raises(InvalidParametersError):
            hamidoune_plagne(10, 3, 1)

    def test_bier_chin(self):
        """Test the prime formula, including p | k - l."""
        assert bier_chin_prime(7, 2, 1) == 2
        assert bier_chin_prime(5, 7, 2) == 0
        with pytest.raises(InvalidParametersError):
            bier_chin_prime(8, 2, 1)

    def test_bier_chin_matches_bajnok_matzke(self):
        """Test that both classical formulas agree on primes."""
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
            for k in range(2, 6):
                for ell in range(1, k):
                    assert bier_chin_prime(p, k, ell) == bajnok_matzke(p, k, ell)

    def test_oracle_agreement_small(self):
        """Test the classical maximum against the oracle with C = {0}."""
        for n in range(1, 13):
            for k in range(2, 5):
                for ell in range(1, k):
                    mu = brute_force_mu(SumFreeParams(n, k, ell), make_set(n, [0]), witness_cap=1).mu
                    assert mu == bajnok_matzke(n, k, ell), (n, k, ell)

    @pytest.mark.slow
    def test_oracle_agreement(self):
        """Test the classical maximum against the oracle for n <= 24, k <= 5."""
        for n in range(1, 25):
            for k in range(2, 6):
                for ell in range(1, k):
                    mu = brute_force_mu(SumFreeParams(n, k, ell), make_set(n, [0]), witness_cap=1).mu
                    assert mu == bajnok_matzke(n, k, ell), (n, k, ell)


class TestTwoElementNoise:
    """Test bounds for C = {0, s}."""

    def test_coset_branch(self):
        """Test n=10, (2,1), s=5: the coset term gives 4 on both sides."""
        report = bounds_two_element(10, 2, 1, 5)
        assert (report.lower, report.upper) == (4, 4)
        assert report.coset_term == 4
        assert report.per_divisor_terms == {1: 0, 5: 4}
        assert report.method is BoundMethod.TWO_ELEMENT

    def test_small_gap(self):
        """Test n=12, (5,2), s=3: lower 0, upper 1."""
        report = bounds_two_element(12, 5, 2, 3)
        assert (report.lower, report.upper) == (0, 1)

    def test_lower_uses_s_plus_one(self):
        """Test n=10, (3,1), s=4: lower 0 from c=5, refined lower 2 from c=3."""
        report = bounds_two_element(10, 3, 1, 4)
        assert report.lower == 0
        assert report.interval_c == 5
        assert report.chi == 1
        assert report.refined_lower == 2
        assert report.upper == 2
        assert report.to_dict()["refined_lower"] == 2

    def test_lower_matches_closed_form(self):
        """Test lower = max(coset term, interval lower at c = s+1) on a grid."""
        for n in range(4, 61):
            for k in range(2, 8):
                for ell in range(1, k):
                    for s in range(2, n):
                        d = gcd(s, n)
                        if d == 1:
                            continue
                        report = bounds_two_element(n, k, ell, s)
                        expected = max(
                            coset_term(n, k, ell, d), bounds_prefix_noise(n, k, ell, s + 1).lower
                        )
                        assert report.lower == expected, (n, k, ell, s)
                        assert report.interval_c == s + 1
                        assert report.lower <= report.refined_lower <= report.upper

    def test_unit_delegates_to_prefix(self):
        """Test that a unit s reduces to C = {0, 1}."""
        report = bounds_two_element(10, 2, 1, 3)
        prefix = bounds_prefix_noise(10, 2, 1, 2)
        assert report.method is BoundMethod.TWO_ELEMENT_UNIT
        assert (report.lower, report.upper) == (prefix.lower, prefix.upper)

    def test_bad_s(self):
        """Test that s outside 1..n-1 is rejected."""
        with pytest.raises(InvalidParametersError):
            bounds_two_element(10, 2, 1, 10)

    def test_coset_terms(self):
        """Test per-divisor coset terms and their maximum."""
        assert coset_terms(10, 2, 1, 5) == {1: 0, 5: 4}
        assert coset_term(10, 2, 1, 5) == 4
        with pytest.raises(InvalidParametersError):
            coset_terms(10, 2, 1, 3)

    def test_zero_p_matches_two_element(self):
        """Test that the prime formula agrees with the general one."""
        for n in range(4, 41):
            for p in (2, 3, 5, 7):
                if n % p or p >= n:
                    continue
                for k, ell in [(2, 1), (3, 1), (3, 2), (4, 1), (5, 3)]:
                    zero_p = bounds_zero_p(n, k, ell, p)
                    general = bounds_two_element(n, k, ell, p)
                    assert (zero_p.lower, zero_p.upper) == (general.lower, general.upper)

    def test_zero_p_validation(self):
        """Test that p must be a prime proper divisor of n."""
        with pytest.raises(InvalidParametersError):
            bounds_zero_p(10, 2, 1, 4)
        with pytest.raises(InvalidParametersError):
            bounds_zero_p(5, 2, 1, 5)
        with pytest.raises(InvalidParametersError):
            bounds_zero_p(10, 2, 1, 3)

    def test_sandwich_small(self, zero_s_noise):
        """Test that the oracle sits between the bounds for non-unit s."""
        for n in range(4, 15):
            for k, ell in [(2, 1), (3, 1), (3, 2)]:
                for s in range(2, n):
                    if gcd(s, n) == 1:
                        continue
                    report = bounds_two_element(n, k, ell, s)
                    mu = brute_force_mu(SumFreeParams(n, k, ell), zero_s_noise(n, s), witness_cap=1).mu
                    assert report.lower <= mu <= report.upper, (n, k, ell, s)


class TestGenericNoise:
    """Test the dispatch for arbitrary noise sets."""

    def test_singleton(self):
        """Test that one-element noise gives the classical value."""
        report = bounds_for_noise(10, 2, 1, make_set(10, [3]))
        assert report.method is BoundMethod.CLASSICAL
        assert report.lower == report.upper == 5

    def test_pair(self):
        """Test that two-element noise goes through the difference."""
        report = bounds_for_noise(10, 2, 1, make_set(10, [2, 7]))
        assert report.method is BoundMethod.TWO_ELEMENT
        assert (report.lower, report.upper) == (4, 4)

    def test_unit_progression(self):
        """Test that a unit multiple of an interval uses the interval bounds."""
        report = bounds_for_noise(10, 2, 1, make_set(10, [0, 3, 6]))
        assert report.method is BoundMethod.PREFIX_INTERVAL
        assert report.interval_c == 3

    def test_generic(self):
        """Test that noise without a closed form gets lower 0 and a pairwise upper."""
        report = bounds_for_noise(10, 2, 1, make_set(10, [0, 2, 4]))
        assert report.method is BoundMethod.GENERIC
        assert report.lower == 0
        assert report.upper <= bounds_two_element(10, 2, 1, 2).upper

    def test_validation(self):
        """Test empty noise and mismatched moduli."""
        with pytest.raises(InvalidParametersError):
            bounds_for_noise(10, 2, 1, make_set(10, []))
        with pytest.raises(ModulusMismatchError):
            bounds_for_noise(10, 2, 1, make_set(9, [0, 1]))


class TestNoisyKneser:
    """Test the noisy Kneser lower bound."""

    def test_values(self):
        """Test the bound below and at the group size."""
        assert kneser_noisy_lower(10, 3, 4, 3) == 8
        assert kneser_noisy_lower(10, 6, 6, 3) == 10

    def test_needs_c(self):
        """Test that c < 2 is rejected."""
        with pytest.raises(InvalidParametersError):
            kneser_noisy_lower(10, 3, 4, 1)
