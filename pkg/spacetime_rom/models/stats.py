#!/usr/bin/env python3
"""
Statistics Models

This module contains data structures related to snapshot statistics,
error decay and speedup measurements.
"""

from typing import NamedTuple


class SnapshotStats(NamedTuple):
    """
    Statistics of the offline snapshot solves.

    Attributes:
        total_samples: Number of training parameters
        successful_solves: Number of full-order solves that succeeded
        failed_solves: Number of full-order solves that failed
        start_time: Stage start timestamp
        end_time: Stage end timestamp
        total_duration: Stage duration in seconds
        avg_time_per_solve: Mean wall time of one full-order solve
        solves_per_second: Throughput over the whole stage
        max_residual: Largest relative KKT residual observed
    """

    total_samples: int
    successful_solves: int
    failed_solves: int
    start_time: float
    end_time: float
    total_duration: float
    avg_time_per_solve: float
    solves_per_second: float
    max_residual: float


class BenchmarkRow(NamedTuple):
    """
    Mean test-set errors and timings at one reduced basis size.

    Pressure columns are NaN for parabolic cases.

    Attributes:
        n: POD modes per role
        n_tot: Reduced KKT dimension
        e_state: Mean relative state (velocity) error
        e_control: Mean relative control error
        e_adjoint: Mean relative adjoint error
        e_pressure: Mean relative pressure error
        e_adjoint_pressure: Mean relative adjoint pressure error (mean-shifted)
        e_output: Mean relative objective error
        fe_time: Mean full-order wall time in seconds
        rom_time: Mean online wall time in seconds
        speedup: fe_time / rom_time
    """

    n: int
    n_tot: int
    e_state: float
    e_control: float
    e_adjoint: float
    e_pressure: float
    e_adjoint_pressure: float
    e_output: float
    fe_time: float
    rom_time: float
    speedup: float
