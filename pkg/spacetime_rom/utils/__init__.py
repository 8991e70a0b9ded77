"""
Utilities module for the space-time reduced order modelling package.

This module provides shared utility functions organized by concern:
- Logging utilities for consistent logging setup and structured events
- General helper functions for common operations
- Validation utilities for paths
"""

# Logging utilities
from .logging import (
    log_online_solve,
    log_solve_failure,
    log_solve_success,
    log_stage_event,
    setup_logging,
)

# General helper utilities
from .helpers import create_progress_bar, format_duration, parse_int_list

# Validation utilities
from .validation import has_offline_artifacts, is_output_dir_writable

__all__ = [
    "setup_logging",
    "log_solve_success",
    "log_solve_failure",
    "log_stage_event",
    "log_online_solve",
    "create_progress_bar",
    "format_duration",
    "parse_int_list",
    "is_output_dir_writable",
    "has_offline_artifacts",
]
