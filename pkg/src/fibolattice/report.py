"""
Results of the brute force versus closed form harness.

This module provides the record of a single check cell, the aggregated
report with its pass/fail matrix, and summary metrics over a run.
"""

from dataclasses import dataclass, field
from typing import Any

from fibolattice.family import FamilyParam


@dataclass
class CheckResult:
    """Outcome of one (check, n, p) cell."""

    check: str
    n: int
    p: FamilyParam
    passed: bool
    detail: str = ""
    counterexample: str | None = None
    operations: tuple[str, ...] = ()
    elapsed: float = 0.0

    # Derived
    status: str = field(init=False, default="")

    def __post_init__(self) -> None:
        """Derive the status label."""
        self.status = "pass" if self.passed else "FAIL"

    def sort_key(self) -> tuple[str, float, int]:
        return (self.check, self.p.sort_key(), self.n)

    def __str__(self) -> str:
        text = f"{self.check} n={self.n} p={self.p}: {self.status}"
        if self.detail:
            text += f" ({self.detail})"
        if self.counterexample:
            text += f" counterexample: {self.counterexample}"
        return text

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "check": self.check,
            "n": self.n,
            "p": self.p.to_json(),
            "passed": self.passed,
            "detail": self.detail,
            "counterexample": self.counterexample,
            "operations": list(self.operations),
        }


class CheckReport:
    """Collect cell results and render them deterministically."""

    def __init__(self) -> None:
        self.results: list[CheckResult] = []

    def record(self, result: CheckResult) -> None:
        self.results.append(result)

    def extend(self, results: list[CheckResult]) -> None:
        self.results.extend(results)

    @property
    def all_passed(self) -> bool:
        return all(result.passed for result in self.results)

    def sorted_results(self) -> list[CheckResult]:
        return sorted(self.results, key=CheckResult.sort_key)

    def failures(self) -> list[CheckResult]:
        return [result for result in self.sorted_results() if not result.passed]

    def check_names(self) -> list[str]:
        return sorted({result.check for result in self.results})

    def p_values(self) -> list[FamilyParam]:
        return sorted({result.p for result in self.results}, key=FamilyParam.sort_key)

    def first_failure(self, check: str, p: FamilyParam) -> CheckResult | None:
        """Failing cell with the smallest n for a check and p, if any."""
        failing = [
            result
            for result in self.results
            if result.check == check and result.p == p and not result.passed
        ]
        return min(failing, key=lambda result: result.n, default=None)

    def operations_exercised(self) -> set[str]:
        return {op for result in self.results for op in result.operations}

    def matrix(self) -> dict[str, dict[str, str]]:
        """check -> p -> "ok", "FAIL n=k" or "-" when no cell ran."""
        table: dict[str, dict[str, str]] = {}
        for check in self.check_names():
            row = {}
            for p in self.p_values():
                ran = any(r.check == check and r.p == p for r in self.results)
                failure = self.first_failure(check, p)
                if not ran:
                    row[str(p)] = "-"
                elif failure is None:
                    row[str(p)] = "ok"
                else:
                    row[str(p)] = f"FAIL n={failure.n}"
            table[check] = row
        return table

    def render_matrix(self) -> str:
        table = self.matrix()
        columns = [str(p) for p in self.p_values()]
        label_width = max([len("check"), *(len(name) for name in table)])
        widths = [
            max([len(f"p={column}"), *(len(row[column]) for row in table.values())])
            for column in columns
        ]
        header = "check".ljust(label_width) + "".join(
            "  " + f"p={column}".ljust(width)
            for column, width in zip(columns, widths, strict=True)
        )
        lines = [header.rstrip()]
        for name, row in table.items():
            line = name.ljust(label_width) + "".join(
                "  " + row[column].ljust(width)
                for column, width in zip(columns, widths, strict=True)
            )
            lines.append(line.rstrip())
        return "\n".join(lines)

    def get_summary_metrics(self) -> dict[str, Any]:
        """Get summary metrics across all cells."""
        if not self.results:
            return {}
        failed = len(self.failures())
        total = len(self.results)
        return {
            "total_cells": total,
            "passed_cells": total - failed,
            "failed_cells": failed,
            "pass_rate": (total - failed) / total,
            "checks": len(self.check_names()),
            "max_n": max(result.n for result in self.results),
            "operations_exercised": len(self.operations_exercised()),
        }

    def render(self) -> str:
        """Matrix, summary line and the minimal counterexample of each failing row."""
        lines = [self.render_matrix()]
        metrics = self.get_summary_metrics()
        if metrics:
            lines.append(
                f"{metrics['passed_cells']}/{metrics['total_cells']} cells passed, "
                f"{metrics['operations_exercised']} operations exercised"
            )
        for check in self.check_names():
            for p in self.p_values():
                failure = self.first_failure(check, p)
                if failure is not None:
                    lines.append(str(failure))
        return "\n".join(lines) + "\n"
