#!/usr/bin/env python3
"""
Application Constants

This module contains the exit codes, numerical tolerances and file-format
constants used throughout the space-time reduced order modelling package.
"""

# Exit codes for different failure modes
EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_ARTIFACT_MISMATCH = 4
EXIT_INTERRUPTED = 130  # Conventional exit code for Ctrl+C
EXIT_UNEXPECTED_ERROR = 10

# Numerical tolerances
POD_EIGENVALUE_TOLERANCE = 1e-12  # relative to the largest eigenvalue
GRAM_SCHMIDT_DROP_TOLERANCE = 1e-10  # relative to the incoming vector norm
KKT_RESIDUAL_TOLERANCE = 1e-10
SYMMETRY_TOLERANCE = 1e-12
MAP_INVERSE_TOLERANCE = 1e-12
PIVOT_WARNING_RATIO = 1e-14

# Binary matrix format
MATRIX_MAGIC = b"STRM"
MATRIX_HEADER_BYTES = 16
MATRIX_SCALAR_WIDTH = 8

# Case configuration files
CASE_SCHEMA_VERSION = "spacetime-rom/case-v1"
MANIFEST_FILENAME = "manifest.json"
REDUCED_MODEL_FILENAME = "reduced_model.json"

# Environment variable enabling the long desk-scale acceptance runs
SLOW_TESTS_ENV_VAR = "SPACETIME_ROM_RUN_SLOW"
