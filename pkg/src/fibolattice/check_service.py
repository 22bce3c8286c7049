"""
Orchestrator for the brute force versus closed form harness.

The service expands the configured (check, n, p) grid into cells, runs them
sequentially or on a process pool, and assembles a CheckReport whose order
does not depend on completion order.
"""

import multiprocessing as mp
from collections.abc import Sequence

from tqdm import tqdm

from fibolattice.checks import CHECKS, REQUIRED_OPERATIONS, CellContext, run_cell
from fibolattice.config import AppConfig
from fibolattice.errors import InvalidInputError
from fibolattice.logging_config import get_logger
from fibolattice.report import CheckReport, CheckResult

logger = get_logger(__name__)

CellTask = tuple[str, CellContext]


def _run_task(task: CellTask) -> CheckResult:
    check, ctx = task
    return run_cell(check, ctx)


class CheckService:
    """
    Run the check harness end to end.

    Phases:
    - Initialize: expand the check grid into cell tasks
    - Run: execute every cell, with a progress bar on stderr
    - Report: assert operation coverage and log the summary
    """

    def __init__(self, config: AppConfig, checks: Sequence[str] | None = None):
        """
        Args:
            config: Application configuration; the ``check`` section drives the grid
            checks: Restrict the run to these check names (all by default)
        """
        self.config = config
        self.checks = sorted(CHECKS) if checks is None else list(checks)
        unknown = sorted(set(self.checks) - set(CHECKS))
        if unknown:
            raise InvalidInputError(
                f"Unknown checks {unknown}; choose from {', '.join(sorted(CHECKS))}"
            )
        self.tasks: list[CellTask] = []
        self.report = CheckReport()

    def run(self) -> CheckReport:
        try:
            self._initialize()
            self._run_checks()
            self._report_results()
        except Exception as e:
            logger.error("Check run failed: %s", e)
            raise
        return self.report

    def _initialize(self) -> None:
        settings = self.config.check
        self.tasks = [
            (check, CellContext(n, p, self.config.guards, settings))
            for check in self.checks
            for p in settings.p_values
            for n in range(settings.n_max + 1)
        ]
        logger.info(
            "Starting check run: %d checks, n <= %d, p in {%s}, %d cells",
            len(self.checks),
            settings.n_max,
            ", ".join(str(p) for p in settings.p_values),
            len(self.tasks),
        )

    def _run_checks(self) -> None:
        settings = self.config.check
        progress_bar = tqdm(
            total=len(self.tasks),
            desc="Checking cells",
            unit="cell",
            leave=False,
            disable=not settings.enable_progress_bar,
        )
        try:
            if settings.workers > 1:
                with mp.Pool(processes=settings.workers) as pool:
                    for result in pool.imap_unordered(_run_task, self.tasks):
                        self._record(result)
                        progress_bar.update()
            else:
                for task in self.tasks:
                    self._record(_run_task(task))
                    progress_bar.update()
        except KeyboardInterrupt:
            logger.warning("Check run interrupted after %d cells", len(self.report.results))
            raise
        finally:
            progress_bar.close()
            self._cleanup_multiprocessing()

    def _record(self, result: CheckResult) -> None:
        self.report.record(result)
        if not result.passed:
            logger.debug("Mismatch: %s", result)

    def _cleanup_multiprocessing(self) -> None:
        for process in mp.active_children():
            if process.is_alive():
                logger.debug("Terminating worker %s", process.name)
                process.terminate()
                process.join(timeout=1.0)

    def _report_results(self) -> None:
        """Add the coverage cell on full runs and log the summary."""
        if set(self.checks) == set(CHECKS):
            missing = sorted(REQUIRED_OPERATIONS - self.report.operations_exercised())
            settings = self.config.check
            self.report.record(
                CheckResult(
                    check="coverage",
                    n=settings.n_max,
                    p=settings.p_values[0],
                    passed=not missing,
                    detail=(
                        f"operations never exercised: {', '.join(missing)}"
                        if missing
                        else f"{len(REQUIRED_OPERATIONS)} operations exercised"
                    ),
                )
            )

        metrics = self.report.get_summary_metrics()
        logger.info("\n=== Check Results ===")
        logger.info(
            "%d/%d cells passed (%.1f%%)",
            metrics.get("passed_cells", 0),
            metrics.get("total_cells", 0),
            100 * metrics.get("pass_rate", 1.0),
        )
        for failure in self.report.failures():
            logger.info("Mismatch: %s", failure)
        if self.report.all_passed:
            logger.info("=== All checks passed ===")
