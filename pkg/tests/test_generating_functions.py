"""
Tests for the closed-form generating functions.

Series coefficients are compared with hand-checked values and with the
exhaustive counts of the lattice and interval modules.
"""

import math
from fractions import Fraction

import pytest

from fibolattice.dyckpath import family_size
from fibolattice.errors import InvalidInputError
from fibolattice.family import INFINITY
from fibolattice.generating_functions import (
    GF_CATALOG,
    boolean_closed_total,
    closed_b,
    counts_at,
    derivative_at_one,
    g_polynomial,
    gf_B,
    gf_cover_class,
    gf_coverings,
    gf_F,
    gf_family,
    gf_I,
    gf_J,
    gf_J_total,
    gf_join_irreducible,
    gf_L,
    gf_meet_irreducible,
    gf_W,
    gf_W_sum,
    linear_closed_total,
    mean_statistic,
    series_by_name,
)
from fibolattice.intervals import IntervalKind, count_intervals
from fibolattice.lattice import cover_histogram, hasse_edges, meet_irreducibles, turan_edges
from fibolattice.series import TruncatedSeries, eval_y

FAMILIES = [2, 3, 4, "inf"]

# ============================================================================
# Helper Functions
# ============================================================================


def totals(series):
    return eval_y(series, 1).integer_coefficients()


class TestElementSeries:
    """Elements, covers and irreducibles."""

    def test_g_polynomial(self):
        assert g_polynomial(3, 5).integer_coefficients() == [1, -1, -1, -1, 0]

    @pytest.mark.parametrize("p", FAMILIES)
    def test_family_sizes(self, p):
        assert gf_family(p, 10).integer_coefficients() == [family_size(n, p) for n in range(10)]

    def test_gf_F_rows_for_p_two(self):
        series = gf_F(2, 7)
        rows = [counts_at(series, n) for n in range(7)]
        assert rows == [
            {0: 1},
            {0: 1},
            {0: 1, 1: 1},
            {0: 1, 1: 2},
            {0: 1, 1: 4},
            {0: 1, 1: 6, 2: 1},
            {0: 1, 1: 9, 2: 3},
        ]

    @pytest.mark.parametrize("p", FAMILIES)
    def test_gf_F_matches_cover_histograms(self, p):
        series = gf_F(p, 9)
        for n in range(9):
            assert counts_at(series, n) == cover_histogram(n, p)

    @pytest.mark.parametrize("p", FAMILIES)
    def test_coverings_are_derivative_of_gf_F(self, p):
        assert totals(gf_coverings(p, 9)) == totals(derivative_at_one(gf_F(p, 9)))

    def test_coverings_values(self):
        assert gf_coverings(2, 10).integer_coefficients()[2:] == [1, 2, 4, 8, 15, 28, 51, 92]
        infinite = gf_coverings(INFINITY, 10).integer_coefficients()
        assert infinite[3:] == [n * 2 ** (n - 3) for n in range(3, 10)]

    @pytest.mark.parametrize("p", FAMILIES)
    def test_coverings_match_hasse(self, p):
        values = gf_coverings(p, 8).integer_coefficients()
        assert values == [len(hasse_edges(n, p)) for n in range(8)]

    @pytest.mark.parametrize("p", [2, 3, 4])
    def test_meet_irreducible_series(self, p):
        values = gf_meet_irreducible(p, 12).integer_coefficients()
        assert values == [closed_b(n, p) for n in range(12)]
        assert values == [turan_edges(n, p) for n in range(12)]
        assert gf_join_irreducible(p, 12) == gf_meet_irreducible(p, 12)

    def test_meet_irreducible_series_infinite(self):
        values = gf_meet_irreducible(INFINITY, 10).integer_coefficients()
        assert values == [n * (n - 1) // 2 for n in range(10)]
        assert closed_b(6, INFINITY) == 15

    def test_meet_irreducibles_by_enumeration(self):
        values = gf_meet_irreducible(3, 9).integer_coefficients()
        assert values == [len(meet_irreducibles(n, 3)) for n in range(9)]

    @pytest.mark.parametrize("p", FAMILIES)
    def test_cover_classes(self, p):
        series = {k: gf_cover_class(p, k, 10).integer_coefficients() for k in range(4)}
        for n in range(10):
            histogram = cover_histogram(n, p)
            for k, values in series.items():
                assert values[n] == histogram.get(k, 0), (n, k)

    def test_cover_class_rejects_negative(self):
        with pytest.raises(InvalidInputError, match="non-negative"):
            gf_cover_class(2, -1, 5)


class TestIntervalSeries:
    """Boolean, linear and all intervals."""

    def test_boolean_totals_for_p_two(self):
        assert totals(gf_B(2, 7)) == [1, 1, 3, 5, 9, 17, 31]

    @pytest.mark.parametrize("p", FAMILIES)
    def test_boolean_by_height(self, p):
        series = gf_B(p, 8)
        for n in range(8):
            expected = count_intervals(n, p, IntervalKind.BOOLEAN).histogram
            assert counts_at(series, n) == expected

    def test_boolean_closed_total(self):
        values = totals(gf_B(INFINITY, 12))
        assert values == [boolean_closed_total(n) for n in range(12)]

    def test_linear_row_for_p_two(self):
        assert counts_at(gf_L(2, 5), 4) == {0: 5, 1: 4, 2: 3, 3: 2, 4: 1}

    @pytest.mark.parametrize("p", FAMILIES)
    def test_linear_by_height(self, p):
        series = gf_L(p, 8)
        for n in range(8):
            expected = count_intervals(n, p, IntervalKind.LINEAR).histogram
            assert counts_at(series, n) == expected

    @pytest.mark.parametrize("p", [2, "inf"])
    def test_linear_closed_totals(self, p):
        values = totals(gf_L(p, 20))
        assert values == [linear_closed_total(n, p) for n in range(20)]

    def test_linear_closed_total_values(self):
        assert linear_closed_total(4, INFINITY) == 26
        assert linear_closed_total(4, 2) == 15

    def test_linear_closed_total_limits(self):
        with pytest.raises(InvalidInputError, match="No closed total"):
            linear_closed_total(5, 3)
        with pytest.raises(InvalidInputError, match="non-negative"):
            linear_closed_total(-1, 2)

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    def test_w_closed_form_matches_sum(self, p):
        assert gf_W(p, 14) == gf_W_sum(p, 14)

    def test_all_intervals_infinite(self):
        series = gf_I(10)
        assert counts_at(series, 2) == {0: 2, 1: 1}
        assert counts_at(series, 3) == {0: 5, 1: 4, 2: 1}
        assert totals(series)[1:] == [math.comb(2 * n - 1, n) for n in range(1, 10)]

    def test_all_intervals_p_two(self):
        expected = [1, 1, 3, 6, 15, 35, 86, 210, 520, 1292]
        assert totals(gf_J(10)) == expected
        assert gf_J_total(10).integer_coefficients() == expected

    @pytest.mark.parametrize(("p", "series"), [("inf", gf_I), (2, gf_J)])
    def test_all_intervals_by_ascent_gap(self, p, series):
        closed = series(8)
        for n in range(8):
            assert counts_at(closed, n) == count_intervals(n, p).histogram


class TestMeans:
    """Mean statistics from series quotients."""

    def test_mean_upper_covers(self):
        assert mean_statistic(gf_F(INFINITY, 5), 3) == Fraction(3, 4)

    def test_mean_of_empty_class(self):
        with pytest.raises(ZeroDivisionError, match="No objects of size 2"):
            mean_statistic(TruncatedSeries([], 4), 2)

    @pytest.mark.slow
    def test_linear_height_mean_infinite(self):
        mean = mean_statistic(gf_L(INFINITY, 51), 50)
        assert abs(float(mean) - 7 / 3) <= 0.05 * 7 / 3

    @pytest.mark.slow
    def test_linear_height_mean_p_two(self):
        limit = (3 + math.sqrt(5)) / 2
        mean = mean_statistic(gf_L(2, 41), 40)
        assert abs(float(mean) - limit) <= 0.10 * limit


class TestCatalog:
    """Lookup by name."""

    @pytest.mark.parametrize("name", sorted(GF_CATALOG))
    def test_every_entry_builds(self, name):
        series = series_by_name(name, 3, 6)
        assert series.order >= 6

    def test_at_y1(self):
        assert series_by_name("F", 2, 6, at_y1=True).integer_coefficients() == [1, 1, 2, 3, 5, 8]

    def test_unknown_name(self):
        with pytest.raises(InvalidInputError, match="Unknown series 'Z'"):
            series_by_name("Z", 2, 5)

    def test_finite_only_entries(self):
        with pytest.raises(InvalidInputError, match="needs a finite p"):
            series_by_name("W", INFINITY, 5)

    def test_order_must_be_positive(self):
        with pytest.raises(InvalidInputError, match="Series order must be positive"):
            gf_F(2, 0)
