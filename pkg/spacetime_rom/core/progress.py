"""
Progress tracking and reporting components.

This module provides components for tracking and reporting progress
during the concurrent full-order solves of an offline run and for the
start and completion banners of offline runs and benchmarks.
"""

import logging
import time
from typing import Mapping, Optional, Tuple

from ..utils.helpers import create_progress_bar, format_duration

logger = logging.getLogger(__name__)


class ProgressTracker:
    """
    Tracks and reports full-order solve progress.

    Handles progress calculations, ETA estimation, and logging
    of progress updates while snapshots are being computed.
    """

    def __init__(self, total_items: int, log_interval_percent: int = 10):
        """
        Initialize progress tracker.

        Args:
            total_items: Total number of solves
            log_interval_percent: Log a summary every N percent (default 10%)
        """
        self.total_items = total_items
        self.successful_items = 0
        self.failed_items = 0
        self.start_time = time.time()
        self.last_log_time = self.start_time
        self.last_logged_count = 0
        self.max_residual = 0.0

        self.log_interval = max(1, total_items // (100 // log_interval_percent))
        self.min_time_between_logs = 5.0

    @property
    def processed(self) -> int:
        return self.successful_items + self.failed_items

    def update(
        self,
        success: bool,
        label: str,
        duration: float,
        worker_id: str,
        residual: Optional[float] = None,
    ) -> None:
        """
        Update progress with a completed solve.

        Args:
            success: Whether the solve succeeded
            label: Parameter label of the solve
            duration: Solve duration in seconds
            worker_id: ID of the worker that ran the solve
            residual: Relative KKT residual of a successful solve
        """
        if success:
            self.successful_items += 1
            if residual is not None and residual == residual:
                self.max_residual = max(self.max_residual, residual)
        else:
            self.failed_items += 1

        percent = (self.processed / self.total_items * 100) if self.total_items > 0 else 0
        if success:
            logger.info(
                f"[{worker_id}] ✓ µ=({label}) - Success ({duration:.2f}s) - "
                f"Progress: {self.processed}/{self.total_items} ({percent:.1f}%)"
            )
        else:
            logger.warning(
                f"[{worker_id}] ✗ µ=({label}) - Failed - "
                f"Progress: {self.processed}/{self.total_items} ({percent:.1f}%)"
            )

    def should_log_summary(self) -> bool:
        """True when the interval or the minimum time since the last summary has passed."""
        if self.processed == self.total_items:
            return True
        if self.processed - self.last_logged_count >= self.log_interval:
            return True
        return time.time() - self.last_log_time >= self.min_time_between_logs

    def log_summary(self) -> None:
        current_time = time.time()
        elapsed = current_time - self.start_time
        rate = self.processed / elapsed if elapsed > 0 else 0
        remaining = (self.total_items - self.processed) / rate if rate > 0 else 0
        percent = (self.processed / self.total_items * 100) if self.total_items > 0 else 0

        logger.info(
            f"📊 Snapshots {create_progress_bar(self.processed, self.total_items)} "
            f"{self.processed}/{self.total_items} ({percent:.1f}%) - "
            f"Rate: {rate:.2f} solves/sec - ETA: {remaining:.0f}s remaining"
        )
        self.last_log_time = current_time
        self.last_logged_count = self.processed

    def get_stats(self) -> Tuple[int, int]:
        """
        Returns:
            Tuple of (successful_solves, failed_solves)
        """
        return self.successful_items, self.failed_items


class BatchProgressReporter:
    """Formatted start and completion banners for offline runs and benchmarks."""

    @staticmethod
    def log_offline_start(
        case_id: str,
        scale: str,
        n_max: int,
        n: int,
        workers: int,
        n_steps: int,
        reduced_dimension: int,
    ) -> None:
        logger.info("=" * 60)
        logger.info("🚀 Starting Offline Reduction")
        logger.info("=" * 60)
        logger.info("📊 Run Details:")
        logger.info(f"  • Case: {case_id} ({scale})")
        logger.info(f"  • Training Snapshots: {n_max}")
        logger.info(f"  • POD Modes per Role: {n}")
        logger.info(f"  • Concurrent Workers: {workers}")
        logger.info(f"  • Time Steps: {n_steps}")
        logger.info(f"  • Reduced Dimension: {reduced_dimension}")
        logger.info("=" * 60)

    @staticmethod
    def log_offline_completion(timings: Mapping[str, float], n_tot: int, duration: float) -> None:
        logger.info("=" * 60)
        logger.info("✅ Offline Reduction Complete")
        logger.info("=" * 60)
        logger.info("📊 Stage Durations:")
        for stage, seconds in timings.items():
            logger.info(f"  • {stage}: {format_duration(seconds)}")
        logger.info(f"  • Reduced System Dimension: {n_tot}")
        logger.info(f"  • Total Duration: {format_duration(duration)}")
        logger.info("=" * 60)

    @staticmethod
    def log_benchmark_start(case_id: str, n_range, test_size: int) -> None:
        logger.info("=" * 60)
        logger.info("🚀 Starting Error and Speedup Study")
        logger.info("=" * 60)
        logger.info(f"  • Case: {case_id}")
        logger.info(f"  • N values: {', '.join(str(n) for n in n_range)}")
        logger.info(f"  • Test Parameters: {test_size}")
        logger.info("=" * 60)

    @staticmethod
    def log_benchmark_completion(rows, duration: float) -> None:
        logger.info("=" * 60)
        logger.info("✅ Study Complete")
        logger.info("=" * 60)
        if rows:
            best = rows[-1]
            logger.info(f"  • Largest N: {best.n} (N_tot={best.n_tot})")
            logger.info(f"  • Mean Output Error: {best.e_output:.3e}")
            logger.info(f"  • Speedup: {best.speedup:.1f}")
        logger.info(f"  • Total Duration: {format_duration(duration)}")
        logger.info("=" * 60)
