"""
Tests for intervals of F_n^p.

Covers validation, structural boolean and linear recognition against
exhaustive oracles, the Mobius function and the interval histograms.
"""

import math

import pytest

from fibolattice.config import SizeGuardConfig
from fibolattice.dyckpath import DyckPath, enumerate_family
from fibolattice.errors import InvalidInputError, NotInFamilyError, SizeGuardError
from fibolattice.family import INFINITY, FamilyParam
from fibolattice.intervals import (
    Interval,
    IntervalCounts,
    IntervalKind,
    LinearForm,
    all_intervals,
    classify_linear,
    count_by_height,
    count_intervals,
    interval_elements,
    interval_height,
    is_boolean,
    is_boolean_bruteforce,
    is_linear,
    mobius,
    mobius_bruteforce,
    order_matrix,
)

BOOLEAN_LOWER = "UUDUDDUD"
BOOLEAN_UPPER = "UUUDDUDD"

# ============================================================================
# Helper Functions
# ============================================================================


def interval(lower, upper, p="inf"):
    return Interval.parse(lower, upper, p)


class TestIntervalConstruction:
    """Intervals validate membership and order."""

    def test_basic_properties(self, wide_interval):
        assert wide_interval.semilength == 8
        assert wide_interval.lower.area == 7
        assert wide_interval.upper.area == 17
        assert interval_height(wide_interval) == 10
        assert wide_interval.ascent_gap == 2

    def test_p_is_coerced(self):
        assert interval("UD", "UD", "2").p == FamilyParam(2)
        assert Interval(DyckPath.parse("UD"), DyckPath.parse("UD")).p is INFINITY

    def test_lower_must_be_below_upper(self):
        with pytest.raises(InvalidInputError, match="is not below"):
            interval("UUDUDD", "UDUDUD")

    def test_members_required(self):
        with pytest.raises(NotInFamilyError):
            interval("UDUDUD", "UUUDDD", 2)

    def test_str(self):
        assert str(interval("UDUD", "UUDD")) == "[UDUD, UUDD]"
        assert str(interval("", "")) == "[ε, ε]"

    def test_p_two_example(self, narrow_interval):
        assert narrow_interval.p == FamilyParam(2)
        assert narrow_interval.height > 0


class TestBoolean:
    """Boolean intervals: disjoint DU -> UD swaps that are covers of the lower end."""

    def test_boolean_for_infinite_p(self):
        item = interval(BOOLEAN_LOWER, BOOLEAN_UPPER, "inf")
        assert is_boolean(item)
        assert item.height == 2
        assert len(interval_elements(item)) == 4
        assert mobius(item) == 1

    def test_same_pair_is_a_chain_for_p_two(self):
        item = interval(BOOLEAN_LOWER, BOOLEAN_UPPER, 2)
        assert not is_boolean(item)
        assert mobius(item) == 0
        assert is_linear(item)

    def test_single_cover_is_boolean(self):
        item = interval("UDUDUD", "UUDDUD")
        assert is_boolean(item)
        assert mobius(item) == -1

    def test_trivial_interval(self):
        item = interval("UDUD", "UDUD")
        assert is_boolean(item)
        assert mobius(item) == 1

    @pytest.mark.parametrize("p", [2, 3, "inf"])
    def test_structural_check_matches_isomorphism(self, p):
        for n in range(6):
            for item in all_intervals(n, p):
                assert is_boolean(item) == is_boolean_bruteforce(item), str(item)

    @pytest.mark.parametrize("p", [2, 3, "inf"])
    def test_mobius_matches_recursion(self, p):
        for n in range(6):
            for item in all_intervals(n, p):
                assert mobius(item) == mobius_bruteforce(item), str(item)

    def test_mobius_guard(self):
        item = interval(BOOLEAN_LOWER, BOOLEAN_UPPER)
        with pytest.raises(SizeGuardError, match="Mobius limit"):
            mobius_bruteforce(item, SizeGuardConfig(max_mobius_elements=3))

    def test_interval_elements_sorted_by_area(self):
        elements = interval_elements(interval(BOOLEAN_LOWER, BOOLEAN_UPPER))
        assert elements[0].steps == BOOLEAN_LOWER
        assert elements[-1].steps == BOOLEAN_UPPER
        assert [e.area for e in elements] == sorted(e.area for e in elements)


class TestLinear:
    """Structural forms of linear intervals."""

    @pytest.mark.parametrize(
        ("lower", "upper", "p", "form"),
        [
            ("UDUDUD", "UUUDDD", "inf", LinearForm.A2),
            ("UDUDUD", "UDUDUD", "inf", LinearForm.SAME_TYPE),
            ("UDUDUD", "UUDUDD", "inf", LinearForm.A3),
            ("UDUDUDUD", "UUUDDUDD", 2, LinearForm.C3),
            ("UUDDUDUD", "UUUDDUDD", 2, LinearForm.C3),
        ],
    )
    def test_known_forms(self, lower, upper, p, form):
        assert classify_linear(interval(lower, upper, p)) is form

    def test_boolean_square_is_not_linear(self):
        item = interval(BOOLEAN_LOWER, BOOLEAN_UPPER, "inf")
        assert classify_linear(item) is LinearForm.NOT_LINEAR
        assert not is_linear(item)

    @pytest.mark.parametrize("p", [2, 3, "inf"])
    def test_classification_matches_chain_check(self, p):
        for n in range(7):
            for item in all_intervals(n, p):
                structural = classify_linear(item) is not LinearForm.NOT_LINEAR
                assert structural == is_linear(item), str(item)


class TestCounting:
    """Exhaustive interval histograms."""

    def test_all_by_ascent_gap(self):
        counts = count_intervals(3, INFINITY, IntervalKind.ALL)
        assert counts.statistic == "ascent_gap"
        assert counts.histogram == {0: 5, 1: 4, 2: 1}
        assert counts.total == math.comb(5, 3)

    def test_all_for_p_two(self):
        assert count_intervals(3, 2).histogram == {0: 4, 1: 2}

    @pytest.mark.parametrize("n", range(1, 8))
    def test_interval_totals_infinite(self, n):
        assert count_intervals(n, INFINITY).total == math.comb(2 * n - 1, n)

    def test_linear_totals(self):
        assert count_intervals(4, INFINITY, "linear").total == 26
        assert count_intervals(4, 2, IntervalKind.LINEAR).histogram == {
            0: 5,
            1: 4,
            2: 3,
            3: 2,
            4: 1,
        }

    def test_boolean_totals_for_p_two(self):
        totals = [count_intervals(n, 2, "boolean").total for n in range(7)]
        assert totals == [1, 1, 3, 5, 9, 17, 31]

    def test_progress_bar_does_not_change_counts(self):
        quiet = count_intervals(6, 3, "boolean")
        loud = count_intervals(6, 3, "boolean", progress=True)
        assert quiet.histogram == loud.histogram

    @pytest.mark.parametrize("kind", ["boolean", "linear"])
    def test_small_blocks_give_same_counts(self, monkeypatch, kind):
        whole = count_intervals(6, INFINITY, kind)
        monkeypatch.setattr("fibolattice.intervals.ROW_BLOCK", 5)
        blocked = count_intervals(6, INFINITY, kind)
        assert blocked.histogram == whole.histogram

    def test_counts_match_interval_lists(self):
        for p in (2, 3, "inf"):
            for n in range(6):
                intervals = all_intervals(n, p)
                boolean = [item for item in intervals if is_boolean(item)]
                assert count_intervals(n, p, "boolean").histogram == count_by_height(boolean)
                assert count_intervals(n, p).total == len(intervals)

    def test_all_intervals_of_chain(self):
        intervals = all_intervals(3, INFINITY)
        assert len(intervals) == 10
        assert count_by_height(intervals) == {0: 4, 1: 3, 2: 2, 3: 1}

    def test_rows(self):
        counts = IntervalCounts(2, FamilyParam(2), IntervalKind.LINEAR, "height", {1: 1, 0: 2})
        assert counts.to_rows() == [(2, "2", "linear", 0, 2), (2, "2", "linear", 1, 1)]

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            count_intervals(3, 2, "modular")

    def test_comparison_guard(self):
        guard = SizeGuardConfig(max_comparisons=10)
        with pytest.raises(SizeGuardError, match="comparisons"):
            count_intervals(4, INFINITY, guard=guard)

    def test_order_matrix(self):
        elements = enumerate_family(3, INFINITY)
        order = order_matrix(elements)
        assert order.shape == (4, 4)
        assert order.diagonal().all()
        # elements run from the top down, so the relation is lower triangular
        assert order[3].all()
        assert order[0].sum() == 1
