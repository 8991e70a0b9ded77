"""
Unit tests for progress tracking components.
"""

import unittest
from unittest.mock import patch

from spacetime_rom.core.progress import BatchProgressReporter, ProgressTracker
from spacetime_rom.models.stats import BenchmarkRow


class TestProgressTracker(unittest.TestCase):
    """Test cases for ProgressTracker class."""

    def setUp(self):
        """Set up test fixtures."""
        self.tracker = ProgressTracker(total_items=100, log_interval_percent=10)

    def test_initialization(self):
        """Test ProgressTracker initialization."""
        self.assertEqual(self.tracker.total_items, 100)
        self.assertEqual(self.tracker.successful_items, 0)
        self.assertEqual(self.tracker.failed_items, 0)
        self.assertEqual(self.tracker.log_interval, 10)
        self.assertEqual(self.tracker.max_residual, 0.0)

    def test_update_success(self):
        """Test updating with a successful solve."""
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            self.tracker.update(True, "0.1, 2, 1", 1.5, "W01", residual=3e-12)

        self.assertEqual(self.tracker.successful_items, 1)
        self.assertEqual(self.tracker.max_residual, 3e-12)
        mock_logger.info.assert_called_once()
        self.assertIn("µ=(0.1, 2, 1)", mock_logger.info.call_args[0][0])

    def test_update_failure(self):
        """Test updating with a failed solve."""
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            self.tracker.update(False, "0.1, 2, 1", 0.0, "W02")

        self.assertEqual(self.tracker.failed_items, 1)
        self.assertEqual(self.tracker.processed, 1)
        mock_logger.warning.assert_called_once()

    def test_max_residual_ignores_nan(self):
        with patch("spacetime_rom.core.progress.logger"):
            self.tracker.update(True, "a", 0.1, "W01", residual=2e-11)
            self.tracker.update(True, "b", 0.1, "W01", residual=float("nan"))
            self.tracker.update(True, "c", 0.1, "W01", residual=1e-12)
        self.assertEqual(self.tracker.max_residual, 2e-11)

    def test_should_log_summary_interval(self):
        """Test summary logging based on interval."""
        self.assertFalse(self.tracker.should_log_summary())
        for _ in range(9):
            self.tracker.successful_items += 1
            self.assertFalse(self.tracker.should_log_summary())
        self.tracker.successful_items += 1
        self.assertTrue(self.tracker.should_log_summary())

    def test_should_log_summary_time(self):
        """Test summary logging based on time."""
        self.assertFalse(self.tracker.should_log_summary())
        self.tracker.last_log_time -= 6.0
        self.assertTrue(self.tracker.should_log_summary())

    def test_should_log_summary_when_complete(self):
        tracker = ProgressTracker(total_items=3)
        tracker.successful_items = 2
        tracker.failed_items = 1
        self.assertTrue(tracker.should_log_summary())

    def test_log_summary(self):
        """Test progress summary logging."""
        self.tracker.successful_items = 20
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            self.tracker.log_summary()

        message = mock_logger.info.call_args[0][0]
        self.assertIn("20/100", message)
        self.assertIn("solves/sec", message)
        self.assertEqual(self.tracker.last_logged_count, 20)

    def test_get_stats(self):
        self.tracker.successful_items = 8
        self.tracker.failed_items = 2
        self.assertEqual(self.tracker.get_stats(), (8, 2))


class TestBatchProgressReporter(unittest.TestCase):
    """Test cases for BatchProgressReporter class."""

    def test_log_offline_start(self):
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            BatchProgressReporter.log_offline_start("graetz", "tiny", 6, 3, 2, 4, 15)

        messages = [call[0][0] for call in mock_logger.info.call_args_list]
        self.assertIn("  • Case: graetz (tiny)", messages)
        self.assertIn("  • Reduced Dimension: 15", messages)

    def test_log_offline_completion(self):
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            BatchProgressReporter.log_offline_completion({"assembly": 0.5, "pod": 75.0}, 15, 80.0)

        messages = [call[0][0] for call in mock_logger.info.call_args_list]
        self.assertIn("  • pod: 1m 15.0s", messages)
        self.assertIn("  • assembly: 0.50s", messages)

    def test_log_benchmark_completion(self):
        row = BenchmarkRow(3, 15, 0.1, 0.1, 0.1, float("nan"), float("nan"), 2.5e-5, 1.0, 0.01, 100.0)
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            BatchProgressReporter.log_benchmark_start("graetz", [1, 2, 3], 5)
            BatchProgressReporter.log_benchmark_completion([row], 12.0)

        messages = [call[0][0] for call in mock_logger.info.call_args_list]
        self.assertIn("  • N values: 1, 2, 3", messages)
        self.assertIn("  • Largest N: 3 (N_tot=15)", messages)
        self.assertIn("  • Mean Output Error: 2.500e-05", messages)

    def test_log_benchmark_completion_without_rows(self):
        with patch("spacetime_rom.core.progress.logger") as mock_logger:
            BatchProgressReporter.log_benchmark_completion([], 1.0)
        mock_logger.info.assert_called()


if __name__ == "__main__":
    unittest.main()
