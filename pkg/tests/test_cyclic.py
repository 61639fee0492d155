"""
Tests for set arithmetic in Z/nZ.
"""

import pytest

from noisy_sumsets.core.cyclic import (
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
from noisy_sumsets.production.error_handling import (
    InvalidParametersError,
    ModulusMismatchError,
    NotAUnitError,
)


class TestCyclicSet:
    """Test construction, literals and set algebra."""

    def test_make_set_reduces_and_collapses(self):
        """Test that elements are reduced mod n and duplicates collapse."""
        a = make_set(10, [12, -1, 2])
        assert a.elements == (2, 9)
        assert len(a) == 2
        assert a.to_literal() == "2,9"

    def test_literal_round_trip(self):
        """Test that printed literals parse back to the same set."""
        a = make_set(17, [16, 3, 0, 8])
        assert CyclicSet.from_literal(a.to_literal(), 17) == a
        assert CyclicSet.from_literal(" 3, 0 ,16,8", 17) == a

    def test_empty_literal(self):
        """Test that the empty literal is the empty set."""
        assert CyclicSet.from_literal("", 5).is_empty()
        assert CyclicSet.empty(5).to_literal() == ""

    def test_bad_literal(self):
        """Test that non-numeric literal members are rejected."""
        with pytest.raises(InvalidParametersError):
            CyclicSet.from_literal("0,x", 5)
        with pytest.raises(InvalidParametersError):
            CyclicSet.from_literal("0,-1", 5)
        with pytest.raises(InvalidParametersError):
            CyclicSet.from_literal("0,\u00b2", 5)

    def test_modulus_limits(self):
        """Test that n = 0 and n above the ceiling are rejected."""
        with pytest.raises(InvalidParametersError):
            CyclicSet.from_elements(0, [])
        with pytest.raises(InvalidParametersError):
            CyclicSet.from_elements(MAX_MODULUS + 1, [0])

    def test_mask_outside_modulus(self):
        """Test that a mask with a bit at or above n is rejected."""
        with pytest.raises(InvalidParametersError):
            CyclicSet(3, 0b1000)

    def test_equality_needs_same_modulus(self):
        """Test that equal masks on different moduli are different sets."""
        assert CyclicSet(5, 0b11) != CyclicSet(6, 0b11)
        assert CyclicSet(5, 0b11) == make_set(5, [0, 1])

    def test_membership_and_subsets(self):
        """Test membership, subset, union and intersection."""
        a = make_set(8, [1, 3])
        b = make_set(8, [1, 3, 5])
        assert 3 in a and 11 in a and 5 not in a
        assert a.is_subset(b) and not b.is_subset(a)
        assert a.union(make_set(8, [5])) == b
        assert b.intersection(make_set(8, [5, 6])) == make_set(8, [5])
        assert a.add(5) == b

    def test_interval_wraps(self):
        """Test cyclic intervals, including wrap-around and full length."""
        assert interval(10, 8, 4).elements == (0, 1, 8, 9)
        assert interval(4, 1, 9) == CyclicSet.full(4)
        assert interval(4, 3, 0).is_empty()


class TestSums:
    """Test Minkowski and noisy sums."""

    def test_minkowski_sum(self):
        """Test A + B in Z/5Z."""
        assert minkowski_sum(make_set(5, [0, 1]), make_set(5, [0, 2])) == make_set(5, [0, 1, 2, 3])

    def test_sum_with_empty(self):
        """Test that summing with the empty set gives the empty set."""
        assert minkowski_sum(make_set(5, [1]), CyclicSet.empty(5)).is_empty()

    def test_noisy_sum(self):
        """Test A +_C B = A + B + C."""
        result = noisy_sum(make_set(10, [1]), make_set(10, [2]), make_set(10, [0, 1]))
        assert result == make_set(10, [3, 4])

    def test_noisy_sum_needs_noise(self):
        """Test that empty noise is rejected."""
        with pytest.raises(InvalidParametersError):
            noisy_sum(make_set(10, [1]), make_set(10, [2]), CyclicSet.empty(10))

    def test_modulus_mismatch(self):
        """Test that operands on different moduli are rejected."""
        with pytest.raises(ModulusMismatchError):
            minkowski_sum(make_set(5, [0]), make_set(6, [0]))

    def test_iterated_noisy_torus_witness(self):
        """Test 2 *_C {4,5,6} in Z/10Z with C = {0,1}."""
        a = make_set(10, [4, 5, 6])
        result = iterated_noisy(2, a, make_set(10, [0, 1]))
        assert result == make_set(10, [8, 9, 0, 1, 2, 3])
        assert result.intersection(a).is_empty()

    def test_iterated_noisy_base_cases(self):
        """Test 1 *_C A = A and that C = {0} gives the plain multiple."""
        a = make_set(11, [1, 4])
        assert iterated_noisy(1, a, make_set(11, [0, 5])) == a
        assert iterated_noisy(3, a, make_set(11, [0])) == minkowski_sum(
            minkowski_sum(a, a), a
        )

    def test_iterated_noisy_rejects_bad_input(self):
        """Test k = 0 and empty A are rejected."""
        noise = make_set(7, [0, 1])
        with pytest.raises(InvalidParametersError):
            iterated_noisy(0, make_set(7, [1]), noise)
        with pytest.raises(InvalidParametersError):
            iterated_noisy(2, CyclicSet.empty(7), noise)

    def test_difference_set(self):
        """Test A - B and negation."""
        a = make_set(5, [0, 1])
        assert difference_set(a, a) == make_set(5, [0, 1, 4])
        assert negate(make_set(5, [0, 2])) == make_set(5, [0, 3])


class TestGroupStructure:
    """Test stabilizers, subgroups, units and maps between groups."""

    def test_stabilizer_of_coset_union(self):
        """Test that a union of cosets of <2> in Z/6Z is stabilized by <2>."""
        h = stabilizer(make_set(6, [0, 2, 4]))
        assert h.generator == 2
        assert h.order == 3

    def test_stabilizer_conventions(self):
        """Test the empty set, the full group and an aperiodic set."""
        assert stabilizer(CyclicSet.empty(6)).generator == 1
        assert stabilizer(CyclicSet.full(6)).generator == 1
        trivial = stabilizer(make_set(5, [0, 1]))
        assert trivial.generator == 5
        assert trivial.order == 1

    def test_subgroup(self):
        """Test subgroup membership, elements and containment."""
        h = Subgroup(12, 3)
        assert h.as_set() == make_set(12, [0, 3, 6, 9])
        assert 9 in h and 4 not in h
        assert Subgroup(12, 6).is_subgroup_of(h)
        assert not h.is_subgroup_of(Subgroup(12, 6))
        with pytest.raises(InvalidParametersError):
            Subgroup(12, 5)

    def test_translate_and_scale(self):
        """Test translation and unit scaling."""
        assert translate(make_set(5, [0, 1]), 4) == make_set(5, [0, 4])
        assert scale(make_set(7, [1, 2]), 3) == make_set(7, [3, 6])

    def test_scale_needs_unit(self):
        """Test that scaling by a non-unit is rejected."""
        with pytest.raises(NotAUnitError):
            scale(make_set(8, [1]), 2)

    def test_units_and_inverses(self):
        """Test the unit group and modular inverses."""
        assert units(8) == [1, 3, 5, 7]
        assert units(1) == [0]
        assert unit_inverse(3, 7) == 5
        with pytest.raises(NotAUnitError):
            unit_inverse(4, 8)

    def test_divisors(self):
        """Test divisor listing."""
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]

    def test_project_and_lift(self):
        """Test the projection to Z/eZ and the preimage back in Z/nZ."""
        assert project(make_set(8, [1, 5, 7]), 4) == make_set(4, [1, 3])
        assert lift(make_set(2, [1]), 6) == make_set(6, [1, 3, 5])
        b = make_set(3, [2])
        assert project(lift(b, 12), 3) == b

    def test_project_needs_divisor(self):
        """Test that projecting to a non-divisor is rejected."""
        with pytest.raises(InvalidParametersError):
            project(make_set(8, [1]), 3)
        with pytest.raises(InvalidParametersError):
            lift(make_set(3, [1]), 8)
