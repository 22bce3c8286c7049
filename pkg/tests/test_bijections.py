"""
Tests for the Catalan word, composition and subset encodings of F_n^p.

Each encoding is checked on a worked example, for round trips over whole
families, and for transporting the order and the covering relation.
"""

import itertools

import pytest

from fibolattice.bijections import (
    CatalanWord,
    Composition,
    SubsetRepr,
    catalan_covers,
    catalan_interval_check,
    complement_involution,
    composition_covers,
    dominance_leq,
    from_catalan_word,
    from_composition,
    from_subset,
    subset_covers,
    subset_interval_check,
    subset_rank,
    to_catalan_word,
    to_composition,
    to_subset,
)
from fibolattice.dyckpath import DyckPath, enumerate_family
from fibolattice.errors import (
    AmbientMismatchError,
    InvalidCompositionError,
    InvalidSubsetError,
    InvalidWordError,
    LengthMismatchError,
    NotInFamilyError,
    TotalMismatchError,
)
from fibolattice.family import INFINITY
from fibolattice.lattice import leq, upper_covers

from .conftest import SAMPLE_STEPS

FAMILIES = [2, 3, "inf"]

# ============================================================================
# Helper Functions
# ============================================================================


def ordered_pairs(n, p):
    elements = enumerate_family(n, p)
    return itertools.product(elements, repeat=2)


def subset(members, n):
    return SubsetRepr(frozenset(members), n)


# ============================================================================
# Value types
# ============================================================================


class TestValueTypes:
    """Validation of the three encodings."""

    def test_catalan_word(self):
        word = CatalanWord((0, 0, 0, 1, 1, 1, 2))
        assert str(word) == "0001112"
        assert len(word) == 7
        assert word.longest_repeat() == 3
        assert CatalanWord(()).longest_repeat() == 0

    def test_catalan_word_must_start_at_zero(self):
        with pytest.raises(InvalidWordError, match="must start with 0"):
            CatalanWord((1, 1))

    def test_catalan_word_steps(self):
        with pytest.raises(InvalidWordError, match="non-decreasing"):
            CatalanWord((0, 2))
        with pytest.raises(InvalidWordError):
            CatalanWord((0, 1, 0))

    def test_composition(self):
        composition = Composition([3, 3, 1])
        assert composition.parts == (3, 3, 1)
        assert composition.total == 7
        assert composition.partial_sums() == [3, 6, 7]

    def test_composition_parts_positive(self):
        with pytest.raises(InvalidCompositionError, match="Parts must be positive"):
            Composition((1, 0))

    def test_subset(self):
        item = subset({2, 3, 5, 6}, 7)
        assert item.sorted_members == [2, 3, 5, 6]
        assert item.longest_run() == 2
        assert len(item) == 4
        assert subset(set(), 3).longest_run() == 0

    def test_subset_bounds(self):
        with pytest.raises(InvalidSubsetError, match="lie outside"):
            subset({0, 2}, 3)
        with pytest.raises(InvalidSubsetError, match="lie outside"):
            subset({3}, 3)
        with pytest.raises(InvalidSubsetError, match="non-negative"):
            subset(set(), -1)


# ============================================================================
# Worked example
# ============================================================================


class TestSamplePath:
    """U^5 D (U D^3)^2 in each encoding."""

    def test_catalan_word(self, sample_path):
        assert to_catalan_word(sample_path).letters == (0, 0, 0, 1, 1, 1, 2)
        assert from_catalan_word([0, 0, 0, 1, 1, 1, 2], 3) == sample_path

    def test_composition(self, sample_path):
        assert to_composition(sample_path).parts == (3, 3, 1)
        assert from_composition((3, 3, 1), INFINITY) == sample_path

    def test_subset(self, sample_path):
        item = to_subset(sample_path)
        assert item == subset({2, 3, 5, 6}, 7)
        assert subset_rank(item) == sample_path.area == 16
        assert from_subset(item, 3).steps == SAMPLE_STEPS

    def test_rejected_for_p_two(self, sample_path):
        with pytest.raises(NotInFamilyError):
            to_catalan_word(sample_path, 2)
        with pytest.raises(InvalidWordError, match="more than 2 times in a row"):
            from_catalan_word((0, 0, 0, 1, 1, 1, 2), 2)
        with pytest.raises(InvalidCompositionError, match="must not exceed 2"):
            from_composition((3, 3, 1), 2)
        with pytest.raises(InvalidSubsetError, match="2 consecutive integers"):
            from_subset(subset({2, 3, 5, 6}, 7), 2)

    def test_extremes(self):
        bottom = DyckPath.parse("UDUDUD")
        top = DyckPath.parse("UUUDDD")
        assert to_catalan_word(bottom).letters == (0, 1, 2)
        assert to_catalan_word(top).letters == (0, 0, 0)
        assert to_composition(bottom).parts == (1, 1, 1)
        assert to_subset(bottom) == subset(set(), 3)
        assert to_subset(top) == subset({1, 2}, 3)

    def test_empty_path(self):
        empty = DyckPath.empty()
        assert to_catalan_word(empty).letters == ()
        assert from_catalan_word([], 2) == empty
        assert from_composition([], 2) == empty
        assert to_subset(empty) == subset(set(), 0)
        assert from_subset(subset(set(), 0), 2) == empty


# ============================================================================
# Round trips and transport
# ============================================================================


class TestRoundTrips:
    """Every encoding is a bijection onto its family."""

    @pytest.mark.parametrize("p", FAMILIES)
    def test_catalan_words(self, p):
        for n in range(8):
            words = set()
            for element in enumerate_family(n, p):
                word = to_catalan_word(element, p)
                assert from_catalan_word(word, p) == element
                words.add(word)
            assert len(words) == len(enumerate_family(n, p))

    @pytest.mark.parametrize("p", FAMILIES)
    def test_compositions(self, p):
        for n in range(8):
            for element in enumerate_family(n, p):
                composition = to_composition(element, p)
                assert composition.total == n
                assert from_composition(composition, p) == element

    @pytest.mark.parametrize("p", FAMILIES)
    def test_subsets(self, p):
        for n in range(8):
            for element in enumerate_family(n, p):
                item = to_subset(element, p)
                assert subset_rank(item) == element.area
                assert from_subset(item, p) == element


class TestOrderTransport:
    """The order and its covers read the same in every encoding."""

    @pytest.mark.parametrize("p", FAMILIES)
    def test_order(self, p):
        for first, second in ordered_pairs(5, p):
            expected = leq(first, second)
            assert catalan_interval_check(
                to_catalan_word(first), to_catalan_word(second)
            ) == expected
            assert dominance_leq(to_composition(first), to_composition(second)) == expected
            assert subset_interval_check(to_subset(first), to_subset(second), p) == expected

    @pytest.mark.parametrize("p", FAMILIES)
    def test_covers(self, p):
        for first, second in ordered_pairs(5, p):
            expected = second in upper_covers(first, p)
            assert catalan_covers(to_catalan_word(first), to_catalan_word(second)) == expected
            assert composition_covers(
                to_composition(first), to_composition(second), p
            ) == expected
            assert subset_covers(to_subset(first), to_subset(second), p) == expected

    def test_incomparable_subsets(self):
        assert not subset_interval_check(subset({3, 4}, 6), subset({1, 2, 5}, 6))
        assert not subset_interval_check(subset({1, 2, 5}, 6), subset({3, 4}, 6))

    def test_complement_reverses_order(self):
        for first, second in ordered_pairs(5, INFINITY):
            flipped_first = from_subset(complement_involution(to_subset(first)), INFINITY)
            flipped_second = from_subset(complement_involution(to_subset(second)), INFINITY)
            assert leq(first, second) == leq(flipped_second, flipped_first)

    def test_complement(self):
        assert complement_involution(subset({1}, 4)) == subset({2, 3}, 4)


class TestCoverExamples:
    """Hand-checked covers in each encoding."""

    @pytest.mark.parametrize(
        ("lower", "upper", "p", "expected"),
        [
            ((1, 1, 1), (1, 2), "inf", True),
            ((1, 2), (2, 1), "inf", True),
            ((1, 1, 1), (2, 1), "inf", False),
            ((2, 1), (3,), "inf", True),
            ((2, 1), (3,), 2, False),
        ],
    )
    def test_composition_covers(self, lower, upper, p, expected):
        assert composition_covers(Composition(lower), Composition(upper), p) is expected

    @pytest.mark.parametrize(
        ("lower", "upper", "expected"),
        [
            (set(), {1}, True),
            ({1}, {2}, True),
            ({2}, {1, 2}, True),
            (set(), {2}, False),
        ],
    )
    def test_subset_covers(self, lower, upper, expected):
        assert subset_covers(subset(lower, 3), subset(upper, 3)) is expected

    def test_catalan_covers(self):
        assert catalan_covers(CatalanWord((0, 1, 2)), CatalanWord((0, 1, 1)))
        assert not catalan_covers(CatalanWord((0, 1, 2)), CatalanWord((0, 0, 1)))


class TestMismatches:
    """Operands must share their size."""

    def test_catalan_lengths(self):
        with pytest.raises(LengthMismatchError, match="lengths 2 and 3"):
            catalan_interval_check(CatalanWord((0, 1)), CatalanWord((0, 1, 2)))
        with pytest.raises(LengthMismatchError):
            catalan_covers(CatalanWord((0, 1)), CatalanWord((0, 1, 2)))

    def test_composition_totals(self):
        with pytest.raises(TotalMismatchError, match="Compositions of 2 and 3"):
            dominance_leq(Composition((1, 1)), Composition((3,)))
        with pytest.raises(TotalMismatchError):
            composition_covers(Composition((1, 1)), Composition((3,)))

    def test_subset_ambients(self):
        with pytest.raises(AmbientMismatchError):
            subset_interval_check(subset({1}, 3), subset({1}, 4))
        with pytest.raises(AmbientMismatchError):
            subset_covers(subset({1}, 3), subset({1}, 4))

    def test_subset_family_checked(self):
        with pytest.raises(InvalidSubsetError):
            subset_interval_check(subset({1, 2}, 4), subset({2, 3}, 4), 2)
