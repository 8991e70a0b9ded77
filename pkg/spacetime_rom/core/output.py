"""
Output formatting module.

This module writes the CSV tables of the online and benchmark commands and
the per-parameter field files of online solves. Floats are written with
repr so rows are exact and locale independent; timing columns are listed in
TIMING_COLUMNS so determinism checks can drop them.
"""

import csv
import logging
import os
import threading
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from ..models.fields import VariableRole
from ..models.rom import ErrorReport, OnlineSolution
from ..models.stats import BenchmarkRow
from .storage import write_matrix

logger = logging.getLogger(__name__)

_csv_write_lock = threading.Lock()

TIMING_COLUMNS = ("fe_time", "rom_time", "speedup", "wall_time")

# Error columns in table order: column name → role name in ErrorReport.errors
_ERROR_COLUMNS = (
    ("e_y", VariableRole.STATE.value),
    ("e_u", VariableRole.CONTROL.value),
    ("e_p", VariableRole.ADJOINT.value),
)
_PRESSURE_ERROR_COLUMNS = (
    ("e_press", VariableRole.PRESSURE.value),
    ("e_adjpress", VariableRole.ADJOINT_PRESSURE.value),
)

PathLike = Union[str, Path]


def format_value(value) -> str:
    """repr-exact text for floats, plain text for everything else."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def error_columns(with_pressure: bool) -> List[str]:
    columns = [name for name, _ in _ERROR_COLUMNS]
    if with_pressure:
        columns += [name for name, _ in _PRESSURE_ERROR_COLUMNS]
    return columns + ["e_J"]


def benchmark_header(with_pressure: bool) -> List[str]:
    return ["N", "N_tot"] + error_columns(with_pressure) + ["fe_time", "rom_time", "speedup"]


def benchmark_record(row: BenchmarkRow, with_pressure: bool) -> List[str]:
    values = [row.n, row.n_tot, row.e_state, row.e_control, row.e_adjoint]
    if with_pressure:
        values += [row.e_pressure, row.e_adjoint_pressure]
    values += [row.e_output, row.fe_time, row.rom_time, row.speedup]
    return [format_value(v) for v in values]


def _write_line(path: Path, fields: Sequence[str], mode: str) -> None:
    with _csv_write_lock:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, mode, encoding="utf-8", newline="") as f:
            csv.writer(f, lineterminator="\n").writerow(fields)


def initialize_benchmark_csv(path: PathLike, with_pressure: bool) -> Path:
    """Create (or truncate) the benchmark table and write its header."""
    path = Path(path)
    _write_line(path, benchmark_header(with_pressure), "w")
    logger.debug(f"Initialized benchmark table {path}")
    return path


def append_benchmark_row(path: PathLike, row: BenchmarkRow, with_pressure: bool) -> None:
    """Append one row; safe to call from the study callback as rows finish."""
    _write_line(Path(path), benchmark_record(row, with_pressure), "a")


def write_benchmark_csv(path: PathLike, rows: Sequence[BenchmarkRow], with_pressure: bool) -> Path:
    path = initialize_benchmark_csv(path, with_pressure)
    for row in rows:
        append_benchmark_row(path, row, with_pressure)
    logger.info(f"Successfully wrote {len(rows)} benchmark rows to {path}")
    return path


def online_header(names: Sequence[str], with_errors: bool, with_pressure: bool) -> List[str]:
    header = ["index"] + list(names) + ["N_tot", "J", "wall_time"]
    if with_errors:
        header += ["J_fe"] + error_columns(with_pressure) + ["fe_time"]
    return header


def online_record(
    index: int,
    online: OnlineSolution,
    n_tot: int,
    report: Optional[ErrorReport] = None,
    fe_objective: Optional[float] = None,
    fe_time: Optional[float] = None,
    with_pressure: bool = False,
) -> List[str]:
    values = [index] + list(online.parameter.values) + [n_tot, online.objective, online.wall_time]
    if report is not None:
        values.append(fe_objective)
        values += [report.errors[role] for _, role in _ERROR_COLUMNS]
        if with_pressure:
            values += [report.errors[role] for _, role in _PRESSURE_ERROR_COLUMNS]
        values += [report.output_error, fe_time]
    return [format_value(v) for v in values]


def write_online_csv(
    path: PathLike,
    names: Sequence[str],
    records: Sequence[Sequence[str]],
    with_errors: bool,
    with_pressure: bool,
) -> Path:
    """
    Write the online results table.

    Args:
        path: CSV path
        names: Parameter component names (one column each)
        records: Rows built by online_record
        with_errors: Whether the FE comparison columns are present
        with_pressure: Whether the pressure error columns are present

    Raises:
        OSError: If the file cannot be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(online_header(names, with_errors, with_pressure))
            writer.writerows(records)
    except OSError as e:
        logger.error(f"Failed to write online results to {path}: {e}")
        raise
    logger.info(f"Successfully wrote {len(records)} online rows to {path}")
    return path


def write_online_fields(
    directory: PathLike,
    index: int,
    online: OnlineSolution,
    lifted: Mapping[VariableRole, np.ndarray],
) -> Dict[str, Path]:
    """
    Store the reduced coefficients and the lifted fields of one online solve.

    Each field is stored as an (n_dofs, N_t) matrix, one column per step.
    """
    directory = Path(directory)
    stem = f"mu_{index:03d}"
    paths = {"coefficients": directory / f"{stem}_coefficients.strm"}
    write_matrix(paths["coefficients"], online.coefficients)
    for role, values in lifted.items():
        path = directory / f"{stem}_{role.value}.strm"
        write_matrix(path, np.asarray(values, dtype=float).T)
        paths[role.value] = path
    logger.debug(f"Wrote {len(paths)} field files for µ #{index} to {directory}")
    return paths


def read_parameter_file(path: PathLike) -> List[str]:
    """Non-empty, non-comment lines of a parameter list file."""
    if not os.path.isfile(path):
        raise ValueError(f"Parameter file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        lines = [line.strip() for line in f]
    return [line for line in lines if line and not line.startswith("#")]
