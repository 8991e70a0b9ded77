#!/usr/bin/env python3
"""
Core package for the space-time reduced order modelling tool.

This package provides the offline pipeline, the concurrent snapshot
orchestration, progress reporting, artifact storage and the CSV output of
the online and benchmark workflows.
"""

from .storage import (
    ArtifactWriter,
    file_sha256,
    load_manifest,
    load_reduced_model,
    read_matrix,
    write_manifest,
    write_matrix,
)

from .output import (
    append_benchmark_row,
    benchmark_header,
    initialize_benchmark_csv,
    write_benchmark_csv,
    write_online_csv,
)

from .orchestrator import SnapshotOrchestrator

from .pipeline import (
    OfflinePipeline,
    load_run,
    resolve_case_config,
    run_benchmark,
    run_inspect,
    run_offline,
    run_online,
)

__all__ = [
    # Artifact storage
    "write_matrix",
    "read_matrix",
    "file_sha256",
    "ArtifactWriter",
    "write_manifest",
    "load_manifest",
    "load_reduced_model",
    # Output generation
    "benchmark_header",
    "initialize_benchmark_csv",
    "append_benchmark_row",
    "write_benchmark_csv",
    "write_online_csv",
    # Offline and online workflows
    "SnapshotOrchestrator",
    "OfflinePipeline",
    "resolve_case_config",
    "load_run",
    "run_offline",
    "run_online",
    "run_benchmark",
    "run_inspect",
]
