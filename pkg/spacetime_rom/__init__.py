#!/usr/bin/env python3
"""
Space-Time Reduced Order Models Package

A Python package for POD-Galerkin reduced order models of parametrized,
time-dependent linear-quadratic optimal control problems written in
all-at-once space-time saddle point form, with the Graetz flow and the
Stokes cavity as benchmark cases.

This package provides both a command-line interface (offline, online,
benchmark and inspect commands) and a programmatic API.
"""

__version__ = "1.0.0"
__description__ = "Space-time POD-Galerkin reduced order models for parametrized optimal control"
__license__ = "MIT"
__status__ = "Production"

# Import models for public API
from .models import (
    BasisSet,
    CaseId,
    KKTSolution,
    OnlineSolution,
    Parameter,
    ParameterBox,
    ReducedModel,
    RunManifest,
    TimeGrid,
    VariableRole,
)

# Import constants for public API
from .constants import (
    EXIT_ARTIFACT_MISMATCH,
    EXIT_CONFIG_ERROR,
    EXIT_INTERRUPTED,
    EXIT_NUMERICAL_FAILURE,
    EXIT_SUCCESS,
    EXIT_UNEXPECTED_ERROR,
)

# Import cases for public API
from .cases import CaseConfig, CaseProblem, case_config, sample_parameters

# Import reduction functionality for public API
from .reduction import compute_pod_basis, galerkin_project, reduce_problem, solve_online, speedup_study

# Import core functionality for public API
from .core import load_run, run_benchmark, run_inspect, run_offline, run_online

# Import CLI functionality for public API
from .cli import create_argument_parser, main

# Import utilities for public API
from .utils import setup_logging

__all__ = [
    # Package metadata
    "__version__",
    "__description__",
    # Data models
    "Parameter",
    "ParameterBox",
    "CaseId",
    "TimeGrid",
    "VariableRole",
    "KKTSolution",
    "BasisSet",
    "ReducedModel",
    "OnlineSolution",
    "RunManifest",
    # Constants
    "EXIT_SUCCESS",
    "EXIT_CONFIG_ERROR",
    "EXIT_NUMERICAL_FAILURE",
    "EXIT_ARTIFACT_MISMATCH",
    "EXIT_INTERRUPTED",
    "EXIT_UNEXPECTED_ERROR",
    # Cases
    "CaseConfig",
    "CaseProblem",
    "case_config",
    "sample_parameters",
    # Reduction
    "compute_pod_basis",
    "galerkin_project",
    "reduce_problem",
    "solve_online",
    "speedup_study",
    # Workflows
    "run_offline",
    "run_online",
    "run_benchmark",
    "run_inspect",
    "load_run",
    # CLI functions
    "main",
    "create_argument_parser",
    # Utilities
    "setup_logging",
]
