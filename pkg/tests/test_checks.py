"""
Tests for the check cells.

Every registered cell must agree with its closed form on small lattices,
and an injected fault must surface as a failed result with a counterexample.
"""

import pytest

from fibolattice.checks import (
    CHECKS,
    REQUIRED_OPERATIONS,
    CellContext,
    CheckFailure,
    check_cell,
    run_cell,
)
from fibolattice.config import CheckConfig, SizeGuardConfig
from fibolattice.errors import SizeGuardError
from fibolattice.family import INFINITY, FamilyParam

FAMILIES = [FamilyParam(2), FamilyParam(3), INFINITY]

EXPECTED_CHECKS = {
    "elements",
    "upper_covers",
    "lower_covers",
    "coverings",
    "meet_irreducibles",
    "lattice_ops",
    "boolean",
    "linear",
    "intervals",
    "mobius",
    "motzkin",
    "bijections",
    "series",
}


@pytest.fixture
def scratch_check():
    """Register a throwaway cell and remove it afterwards."""
    names = []

    def register(name, func):
        check_cell(name, ["scratch_op"])(func)
        names.append(name)
        return name

    yield register
    for name in names:
        CHECKS.pop(name, None)


class TestRegistry:
    """Cells and the operations they declare."""

    def test_all_checks_registered(self):
        assert EXPECTED_CHECKS <= set(CHECKS)

    def test_declared_operations_cover_requirements(self):
        declared = {op for cell in CHECKS.values() for op in cell.operations}
        assert REQUIRED_OPERATIONS <= declared

    def test_context_small_flag(self):
        assert CellContext(4, FamilyParam(2)).small
        assert not CellContext(12, INFINITY).small


class TestCellsPass:
    """Brute force and closed forms agree on small lattices."""

    @pytest.mark.parametrize("check", sorted(EXPECTED_CHECKS))
    @pytest.mark.parametrize("p", FAMILIES, ids=str)
    def test_small_cells(self, check, p):
        for n in range(6):
            result = run_cell(check, CellContext(n, p))
            assert result.passed, str(result)
            assert result.operations == CHECKS[check].operations
            assert result.elapsed >= 0

    @pytest.mark.parametrize("p", [FamilyParam(4), FamilyParam(5)], ids=str)
    def test_motzkin_cell_with_long_patterns(self, p):
        for n in range(8):
            result = run_cell("motzkin", CellContext(n, p))
            assert result.passed, str(result)

    @pytest.mark.slow
    @pytest.mark.parametrize("check", sorted(EXPECTED_CHECKS))
    @pytest.mark.parametrize("p", FAMILIES, ids=str)
    def test_default_range(self, check, p):
        settings = CheckConfig()
        for n in range(6, settings.n_max + 1):
            result = run_cell(check, CellContext(n, p, settings=settings))
            assert result.passed, str(result)


class TestFailures:
    """Disagreements become failed results instead of exceptions."""

    def test_injected_histogram_fault(self, mocker):
        mocker.patch("fibolattice.checks.cover_histogram", return_value={0: 99})
        result = run_cell("upper_covers", CellContext(3, FamilyParam(2)))
        assert not result.passed
        assert result.status == "FAIL"
        assert "upper cover histogram" in result.detail
        assert "got {0: 99}" in result.detail
        assert result.counterexample == "F_3^2"

    def test_check_failure_fields(self, scratch_check):
        def failing(ctx):
            raise CheckFailure("values differ", "UDUD")

        name = scratch_check("scratch_failure", failing)
        result = run_cell(name, CellContext(2, INFINITY))
        assert not result.passed
        assert result.detail == "values differ"
        assert result.counterexample == "UDUD"
        assert result.operations == ("scratch_op",)

    def test_unexpected_error_is_recorded(self, scratch_check):
        def broken(ctx):
            raise KeyError("missing")

        name = scratch_check("scratch_error", broken)
        result = run_cell(name, CellContext(2, INFINITY))
        assert not result.passed
        assert result.detail.startswith("KeyError")
        assert result.counterexample is None

    def test_size_guard_propagates(self):
        ctx = CellContext(6, INFINITY, guard=SizeGuardConfig(max_elements=4))
        with pytest.raises(SizeGuardError):
            run_cell("elements", ctx)
