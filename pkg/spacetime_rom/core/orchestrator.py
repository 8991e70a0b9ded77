"""
Snapshot orchestration components.

This module runs the full-order KKT solves of an offline run concurrently
over the training parameters. Results are stored by sample index, so the
snapshot order never depends on which worker finishes first.
"""

import logging
import time
from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence, Tuple

from ..cases.problem import CaseProblem
from ..exceptions import StageError
from ..models.kkt import KKTSolution
from ..models.parameter import Parameter
from ..models.stats import SnapshotStats
from ..utils.logging import log_solve_failure, log_solve_success
from .progress import ProgressTracker

logger = logging.getLogger(__name__)

STAGE = "snapshots"


def _timed_solve(problem: CaseProblem, mu: Parameter) -> Tuple[KKTSolution, float]:
    start = time.perf_counter()
    solution = problem.solve(mu)
    return solution, time.perf_counter() - start


class SnapshotOrchestrator:
    """Orchestrates concurrent full-order solves."""

    def __init__(self, problem: CaseProblem, max_workers: int = 1):
        """
        Args:
            problem: Assembled case
            max_workers: Maximum number of concurrent solves
        """
        self.problem = problem
        self.max_workers = max(1, int(max_workers))
        self.stats: Optional[SnapshotStats] = None

    def solve_all(self, parameters: Sequence[Parameter]) -> List[KKTSolution]:
        """
        Solve the full-order system at every parameter.

        Args:
            parameters: Training parameters

        Returns:
            Solutions in the order of parameters

        Raises:
            StageError: Naming the first failed sample index; the remaining
                solves are cancelled
        """
        tracker = ProgressTracker(len(parameters))
        solutions: Dict[int, KKTSolution] = {}
        start_time = time.time()
        logger.info(f"Starting {len(parameters)} full-order solves with {self.max_workers} workers")

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = self._submit_tasks(executor, parameters)
            failure = self._process_results(futures, tracker, solutions)

        end_time = time.time()
        successful, failed = tracker.get_stats()
        duration = end_time - start_time
        self.stats = SnapshotStats(
            total_samples=len(parameters),
            successful_solves=successful,
            failed_solves=failed,
            start_time=start_time,
            end_time=end_time,
            total_duration=duration,
            avg_time_per_solve=duration / successful if successful else 0.0,
            solves_per_second=successful / duration if duration > 0 else 0.0,
            max_residual=tracker.max_residual,
        )
        if failure is not None:
            index, error = failure
            raise StageError(STAGE, f"full-order solve failed: {error}", sample_index=index) from error

        logger.info(f"Full-order solves completed: {successful} successful, {failed} failed")
        return [solutions[i] for i in range(len(parameters))]

    def _submit_tasks(
        self, executor: ThreadPoolExecutor, parameters: Sequence[Parameter]
    ) -> Dict[Future, Tuple[int, Parameter, str]]:
        """
        Returns:
            Dictionary mapping futures to (sample index, parameter, worker_id)
        """
        futures = {}
        for i, mu in enumerate(parameters):
            worker_id = f"W{i % self.max_workers + 1:02d}"
            future = executor.submit(_timed_solve, self.problem, mu)
            futures[future] = (i, mu, worker_id)
        return futures

    def _process_results(
        self,
        futures: Dict[Future, Tuple[int, Parameter, str]],
        tracker: ProgressTracker,
        solutions: Dict[int, KKTSolution],
    ) -> Optional[Tuple[int, Exception]]:
        """Collect results as they complete; returns the first failure, if any."""
        failure = None
        for future in as_completed(futures):
            index, mu, worker_id = futures[future]
            if future.cancelled():
                continue
            try:
                solution, duration = future.result()
            except Exception as e:
                tracker.update(False, mu.label(), 0.0, worker_id)
                log_solve_failure(index, mu.as_dict(), worker_id, 0.0, str(e), logger=logger)
                if failure is None or index < failure[0]:
                    failure = (index, e)
                for pending in futures:
                    pending.cancel()
                continue

            solutions[index] = solution
            tracker.update(True, mu.label(), duration, worker_id, solution.residual)
            log_solve_success(
                index,
                mu.as_dict(),
                worker_id,
                int(solution.metadata.get("dimension", 0)),
                duration,
                solution.residual,
                logger=logger,
            )
            if tracker.should_log_summary():
                tracker.log_summary()
        return failure
