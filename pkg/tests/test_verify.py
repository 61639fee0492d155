"""
Tests for the bounds-versus-oracle sweeps and the conjecture scan.
"""

from math import gcd

import pytest

from noisy_sumsets.bounds.formulas import BoundMethod, BoundsReport, bounds_two_element
from noisy_sumsets.core.cyclic import interval
from noisy_sumsets.production.cache import OracleCache
from noisy_sumsets.production.error_handling import (
    BudgetExceededError,
    ErrorSeverity,
    InvalidParametersError,
    SandwichViolationError,
)
from noisy_sumsets.search.sumfree import SumFreeParams, is_sumfree, longest_interval
from noisy_sumsets.verify import harness
from noisy_sumsets.verify.harness import (
    NoiseKind,
    ScanRanges,
    SweepRanges,
    SweepRow,
    conjecture_scan,
    counterexamples,
    sandwich_sweep,
)


def _row(**overrides):
    values = dict(
        n=10, k=2, ell=1, c_or_s=2, noise_kind=NoiseKind.PREFIX, noise="0,1",
        formula_lower=3, formula_upper=3, oracle_mu=3, tight=True,
        matches_conjecture=True, counterexample=False, exhaustive=True,
        witness="4,5,6",
    )
    values.update(overrides)
    return SweepRow(**values)


class TestScanRanges:
    """Test the scan grids."""

    def test_desk_grid(self):
        """Test that every grid point respects the desk-scale limits."""
        ranges = ScanRanges.desk_scale()
        points = list(ranges.grid())
        assert points
        for c, k, ell, n in points:
            assert 2 <= c <= 4
            assert 1 <= ell < k <= 8
            assert ell <= 3
            assert 1 <= n < 3 * (k + ell)
        assert ranges.largest_modulus() == 32

    def test_full_grid_is_opt_in(self):
        """Test that the long-running range is larger and raises its own ceiling."""
        full = ScanRanges.full_range()
        assert full.c_max == 10 and full.k_max == 19 and full.l_max == 9
        assert full.largest_modulus() <= full.search_ceiling

    def test_n_max_caps_grid(self):
        """Test that n_max truncates the grid."""
        ranges = ScanRanges(c_max=2, k_max=3, l_max=1, n_max=5)
        assert ranges.largest_modulus() == 5


class TestSandwichSweep:
    """Test bounds against the oracle on small grids."""

    def test_prefix(self, handler):
        """Test interval noise: sandwiched, gap at most 1, tight when coprime."""
        rows = sandwich_sweep(
            NoiseKind.PREFIX, SweepRanges(n_max=12, k_max=4, c_max=3), handler=handler
        )
        assert len(rows) == 12 * 6 * 2
        for row in rows:
            assert row.exhaustive
            assert row.sandwiched
            assert row.formula_upper - row.formula_lower <= 1
            if gcd(row.n, row.k - row.ell) == 1:
                assert row.tight
        assert handler.get_error_summary()["total_errors"] == 0

    def test_two_element(self, handler):
        """Test {0, s} noise with gcd(s, n) > 1."""
        rows = sandwich_sweep(
            NoiseKind.TWO_ELEMENT, SweepRanges(n_max=12, k_max=3), handler=handler
        )
        assert rows
        for row in rows:
            assert gcd(row.c_or_s, row.n) > 1
            assert row.sandwiched

    def test_custom(self, handler):
        """Test an arbitrary noise literal."""
        rows = sandwich_sweep(
            NoiseKind.CUSTOM, SweepRanges(n_max=8, k_max=3), noise_literal="0,2,3", handler=handler
        )
        assert rows
        assert all(row.sandwiched for row in rows)

    def test_l_max(self, handler):
        """Test that l_max bounds l while k still runs to k_max."""
        rows = sandwich_sweep(
            NoiseKind.PREFIX, SweepRanges(n_max=6, k_max=4, c_max=2, l_max=1), handler=handler
        )
        assert len(rows) == 6 * 3
        assert {row.ell for row in rows} == {1}
        assert {row.k for row in rows} == {2, 3, 4}
        assert all(row.sandwiched for row in rows)

    def test_custom_needs_literal(self):
        """Test that a custom sweep without noise is rejected."""
        with pytest.raises(InvalidParametersError):
            sandwich_sweep(NoiseKind.CUSTOM, SweepRanges(n_max=5, k_max=3))

    def test_ceiling(self):
        """Test that a grid beyond the search ceiling is refused."""
        with pytest.raises(BudgetExceededError):
            sandwich_sweep(NoiseKind.PREFIX, SweepRanges(n_max=30, search_ceiling=20))

    def test_violation_raises(self, handler, monkeypatch):
        """Test that a row outside its bounds raises and is recorded as critical."""

        def too_low(task):
            return BoundsReport(
                lower=0, upper=0, delta=1, method=BoundMethod.GENERIC, raw_lower=0, raw_upper=0
            )

        monkeypatch.setattr(harness, "_bounds_for", too_low)
        with pytest.raises(SandwichViolationError):
            sandwich_sweep(NoiseKind.PREFIX, SweepRanges(n_max=6, k_max=3, c_max=2), handler=handler)
        assert handler.error_history[-1].severity is ErrorSeverity.CRITICAL

    def test_cache_reuse(self, handler):
        """Test that a second sweep is served from the cache with identical rows."""
        cache = OracleCache()
        ranges = SweepRanges(n_max=8, k_max=3, c_max=2)
        first = sandwich_sweep(NoiseKind.PREFIX, ranges, cache=cache, handler=handler)
        second = sandwich_sweep(NoiseKind.PREFIX, ranges, cache=cache, handler=handler)
        assert [r.oracle_mu for r in first] == [r.oracle_mu for r in second]
        assert [r.witness for r in first] == [r.witness for r in second]
        assert cache.get_stats()["hits"] == len(second)

    def test_parallel_rows_keep_grid_order(self, handler):
        """Test that rows come back in grid order with worker processes."""
        ranges = SweepRanges(n_max=8, k_max=3, c_max=2)
        inline = sandwich_sweep(NoiseKind.PREFIX, ranges, handler=handler)
        pooled = sandwich_sweep(NoiseKind.PREFIX, ranges, jobs=2, handler=handler)
        key = [(r.n, r.k, r.ell, r.c_or_s, r.oracle_mu, r.witness) for r in inline]
        assert key == [(r.n, r.k, r.ell, r.c_or_s, r.oracle_mu, r.witness) for r in pooled]


class TestConjectureScan:
    """Test the interval-noise conjecture scan."""

    def test_small_scan(self, handler):
        """Test a reduced grid: no counterexamples, every row exhaustive."""
        rows = conjecture_scan(ScanRanges(c_max=3, k_max=4, l_max=2), handler=handler)
        assert rows
        assert all(row.exhaustive for row in rows)
        assert counterexamples(rows) == []
        assert all(row.matches_conjecture for row in rows)

    def test_ceiling(self):
        """Test that a scan beyond the search ceiling is refused."""
        with pytest.raises(BudgetExceededError):
            conjecture_scan(ScanRanges(c_max=2, k_max=3, l_max=1, search_ceiling=5))

    def test_counterexample_filter(self):
        """Test that only flagged rows are returned."""
        flagged = _row(formula_lower=2, formula_upper=3, oracle_mu=3, tight=False, counterexample=True)
        rows = [_row(), flagged]
        assert counterexamples(rows) == [flagged]

    def test_row_dict(self):
        """Test that rows serialize with the noise kind as a string."""
        data = _row().to_dict()
        assert data["noise_kind"] == "prefix"
        assert data["witness"] == "4,5,6"


@pytest.mark.slow
class TestAcceptanceSweeps:
    """Full-size sweeps; run with -m slow."""

    def test_prefix_sandwich(self):
        """Test n <= 30, k <= 6, c <= 4."""
        rows = sandwich_sweep(NoiseKind.PREFIX, SweepRanges(n_max=30, k_max=6, c_max=4))
        for row in rows:
            assert row.sandwiched
            assert row.formula_upper - row.formula_lower <= 1
            if gcd(row.n, row.k - row.ell) == 1:
                assert row.formula_lower == row.formula_upper

    def test_longest_interval_grid(self):
        """Test that the emitted interval is sum-free and as long as the lower bound for n <= 30, k <= 6, c <= 4."""
        for row in sandwich_sweep(NoiseKind.PREFIX, SweepRanges(n_max=30, k_max=6, c_max=4)):
            params = SumFreeParams(row.n, row.k, row.ell)
            length, witness = longest_interval(params, row.c_or_s)
            assert length == row.formula_lower == len(witness)
            assert is_sumfree(witness, interval(row.n, 0, row.c_or_s), params)
            assert length <= row.oracle_mu

    def test_two_element_sandwich(self):
        """Test n <= 30, k <= 5, and lower = upper = mu when the coset term reaches n // (k+l)."""
        rows = sandwich_sweep(NoiseKind.TWO_ELEMENT, SweepRanges(n_max=30, k_max=5))
        dominated = 0
        for row in rows:
            assert row.exhaustive
            assert row.sandwiched
            report = bounds_two_element(row.n, row.k, row.ell, row.c_or_s)
            if report.coset_term >= row.n // (row.k + row.ell):
                dominated += 1
                assert row.formula_lower == row.formula_upper == row.oracle_mu
        assert dominated > 0

    def test_desk_scan(self):
        """Test the desk-scale conjecture scan."""
        rows = conjecture_scan(ScanRanges.desk_scale(), jobs=2)
        assert counterexamples(rows) == []
