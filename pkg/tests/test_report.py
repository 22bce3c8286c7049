"""
Tests for check results and the aggregated report.

Tests cover result formatting, deterministic ordering, the pass/fail
matrix, minimal counterexamples and summary metrics.
"""

import pytest

from fibolattice.family import INFINITY, FamilyParam
from fibolattice.report import CheckReport, CheckResult

P2 = FamilyParam(2)
P3 = FamilyParam(3)

# ============================================================================
# Helper Functions
# ============================================================================


def make_result(check="elements", n=3, p=P2, passed=True, **kwargs):
    """
    Create a check result.

    Args:
        check: Check name
        n: Semilength of the cell
        p: Family parameter
        passed: Whether the cell agreed with its closed form
        **kwargs: Remaining CheckResult fields

    Returns:
        CheckResult instance.
    """
    return CheckResult(check=check, n=n, p=p, passed=passed, **kwargs)


@pytest.fixture
def mixed_report():
    """Two checks over p in {2, inf}; boolean fails at n=4 and n=6 for p=2."""
    report = CheckReport()
    for n in range(7):
        report.record(make_result("elements", n, P2, operations=("enumerate_family",)))
        report.record(make_result("elements", n, INFINITY, operations=("family_size",)))
        report.record(
            make_result(
                "boolean",
                n,
                P2,
                passed=n not in (4, 6),
                detail="" if n not in (4, 6) else "boolean intervals by height",
                counterexample=None if n not in (4, 6) else f"F_{n}^2",
                operations=("is_boolean",),
            )
        )
    return report


class TestCheckResult:
    """Single cell records."""

    def test_status(self):
        assert make_result().status == "pass"
        assert make_result(passed=False).status == "FAIL"

    def test_str(self):
        result = make_result(
            "linear", 5, INFINITY, passed=False, detail="mean", counterexample="[UD, UD]"
        )
        assert str(result) == "linear n=5 p=inf: FAIL (mean) counterexample: [UD, UD]"
        assert str(make_result()) == "elements n=3 p=2: pass"

    def test_to_dict(self):
        result = make_result(operations=("leq", "meet"), detail="8 elements")
        assert result.to_dict() == {
            "check": "elements",
            "n": 3,
            "p": 2,
            "passed": True,
            "detail": "8 elements",
            "counterexample": None,
            "operations": ["leq", "meet"],
        }

    def test_sort_key_orders_p_numerically(self):
        results = [make_result(p=INFINITY), make_result(p=P3), make_result(p=P2)]
        assert [r.p for r in sorted(results, key=CheckResult.sort_key)] == [P2, P3, INFINITY]


class TestCheckReport:
    """Aggregation and rendering."""

    def test_empty_report(self):
        report = CheckReport()
        assert report.all_passed
        assert report.get_summary_metrics() == {}
        assert report.render_matrix() == "check"

    def test_failures_sorted(self, mixed_report):
        failures = mixed_report.failures()
        assert [(f.check, f.n) for f in failures] == [("boolean", 4), ("boolean", 6)]
        assert not mixed_report.all_passed

    def test_first_failure(self, mixed_report):
        assert mixed_report.first_failure("boolean", P2).n == 4
        assert mixed_report.first_failure("elements", P2) is None

    def test_names_and_values(self, mixed_report):
        assert mixed_report.check_names() == ["boolean", "elements"]
        assert mixed_report.p_values() == [P2, INFINITY]

    def test_matrix(self, mixed_report):
        assert mixed_report.matrix() == {
            "boolean": {"2": "FAIL n=4", "inf": "-"},
            "elements": {"2": "ok", "inf": "ok"},
        }

    def test_render_matrix(self, mixed_report):
        assert mixed_report.render_matrix().splitlines() == [
            "check     p=2       p=inf",
            "boolean   FAIL n=4  -",
            "elements  ok        ok",
        ]

    def test_summary_metrics(self, mixed_report):
        metrics = mixed_report.get_summary_metrics()
        assert metrics["total_cells"] == 21
        assert metrics["passed_cells"] == 19
        assert metrics["failed_cells"] == 2
        assert metrics["pass_rate"] == pytest.approx(19 / 21)
        assert metrics["checks"] == 2
        assert metrics["max_n"] == 6
        assert metrics["operations_exercised"] == 3

    def test_render(self, mixed_report):
        text = mixed_report.render()
        lines = text.splitlines()
        assert lines[3] == "19/21 cells passed, 3 operations exercised"
        assert lines[4] == (
            "boolean n=4 p=2: FAIL (boolean intervals by height) counterexample: F_4^2"
        )
        assert len(lines) == 5
        assert text.endswith("\n")

    def test_extend(self):
        report = CheckReport()
        report.extend([make_result(n=1), make_result(n=0)])
        assert [r.n for r in report.sorted_results()] == [0, 1]
        assert report.operations_exercised() == set()
