"""
Logging utilities for the space-time reduced order modelling package.

This module provides centralized logging configuration and the structured
event records (SOLVE, SOLVE_FAILURE, STAGE, ONLINE) that make offline and
online runs machine-readable.
"""

import json
import logging
import time
from typing import Any, Dict, Mapping, Optional


def setup_logging(verbose: bool = False):
    """Setup logging configuration with appropriate level and format."""
    level = logging.DEBUG if verbose else logging.INFO
    format_string = "%(asctime)s - %(levelname)s - %(message)s"

    logging.basicConfig(level=level, format=format_string, datefmt="%Y-%m-%d %H:%M:%S")

    # Set specific logger levels
    logging.getLogger("dotenv").setLevel(logging.WARNING)  # Reduce .env.local parsing noise


def events_enabled() -> bool:
    """Whether structured event records are switched on in the current Env."""
    from ..config.env import Env

    return Env.current_or_default().LOG_JSON_EVENTS


def _emit(prefix: str, record: Dict[str, Any], logger: logging.Logger, level: int = logging.INFO) -> None:
    if events_enabled():
        logger.log(level, f"{prefix}: {json.dumps(record, ensure_ascii=False, sort_keys=True)}")


def log_solve_success(
    sample_index: int,
    parameter: Mapping[str, float],
    worker_id: str,
    dimension: int,
    duration: float,
    residual: float,
    timestamp: Optional[float] = None,
    logger: Optional[logging.Logger] = None,
):
    """
    Log a structured record for a successful full-order KKT solve.

    Args:
        sample_index: Index of the training parameter
        parameter: Parameter components by name
        worker_id: Identifier of the worker thread
        dimension: KKT system dimension
        duration: Solve duration in seconds
        residual: Relative residual of the solution
        timestamp: Record timestamp (defaults to current time)
        logger: Logger instance to use (defaults to this module's logger)
    """
    if logger is None:
        logger = logging.getLogger(__name__)
    if timestamp is None:
        timestamp = time.time()

    record = {
        "event_type": "full_order_solve",
        "timestamp": timestamp,
        "sample_index": sample_index,
        "parameter": dict(parameter),
        "worker_id": worker_id,
        "dimension": dimension,
        "duration_seconds": round(duration, 3),
        "residual": residual,
        "success": True,
    }
    _emit("SOLVE", record, logger)


def log_solve_failure(
    sample_index: int,
    parameter: Mapping[str, float],
    worker_id: str,
    duration: float,
    error_message: str,
    timestamp: Optional[float] = None,
    logger: Optional[logging.Logger] = None,
):
    """
    Log a structured record for a failed full-order KKT solve.

    Args:
        sample_index: Index of the training parameter
        parameter: Parameter components by name
        worker_id: Identifier of the worker thread
        duration: Time spent before the failure in seconds
        error_message: Description of the error
        timestamp: Record timestamp (defaults to current time)
        logger: Logger instance to use (defaults to this module's logger)
    """
    if logger is None:
        logger = logging.getLogger(__name__)
    if timestamp is None:
        timestamp = time.time()

    record = {
        "event_type": "solve_failure",
        "timestamp": timestamp,
        "sample_index": sample_index,
        "parameter": dict(parameter),
        "worker_id": worker_id,
        "duration_seconds": round(duration, 3),
        "error_message": error_message,
        "success": False,
    }
    _emit("SOLVE_FAILURE", record, logger, level=logging.WARNING)


def log_stage_event(
    stage: str,
    duration: float,
    details: Optional[Mapping[str, Any]] = None,
    logger: Optional[logging.Logger] = None,
):
    """Log a structured record for a completed offline stage."""
    if logger is None:
        logger = logging.getLogger(__name__)
    record = {
        "event_type": "offline_stage",
        "stage": stage,
        "duration_seconds": round(duration, 3),
        "details": dict(details or {}),
    }
    _emit("STAGE", record, logger)


def log_online_solve(
    parameter: Mapping[str, float],
    n_tot: int,
    wall_time: float,
    objective: float,
    logger: Optional[logging.Logger] = None,
):
    """Log a structured record for a reduced online solve (DEBUG level)."""
    if logger is None:
        logger = logging.getLogger(__name__)
    record = {
        "event_type": "online_solve",
        "parameter": dict(parameter),
        "n_tot": n_tot,
        "wall_time_seconds": wall_time,
        "objective": objective,
    }
    _emit("ONLINE", record, logger, level=logging.DEBUG)
