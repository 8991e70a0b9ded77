#!/usr/bin/env python3
"""
Data models for the space-time reduced order modelling package.

This package contains the plain data types shared by the numerical
sub-packages: parameters, meshes, space-time fields, KKT containers,
snapshots and bases, reduced models, run manifests and statistics.
"""

from .parameter import Parameter, ParameterBox, parameters_to_matrix, parse_parameter_text
from .case import CaseId, case_parameter_box
from .mesh import GeometricMap, Mesh
from .fields import SpaceTimeField, TimeGrid, VariableRole
from .kkt import (
    BlockKKT,
    KKTRightHandSide,
    KKTSolution,
    ObjectiveOperators,
    StateOperators,
    StepLayout,
)
from .basis import InnerProduct, ReducedBasis, SnapshotSet
from .rom import (
    PARABOLIC,
    STOKES,
    AggregatedSpace,
    BasisSet,
    ErrorReport,
    OnlineSolution,
    ReducedFamily,
    ReducedModel,
)
from .manifest import ArtifactRecord, RunManifest
from .stats import BenchmarkRow, SnapshotStats

__all__ = [
    # Parameters and cases
    "Parameter",
    "ParameterBox",
    "parse_parameter_text",
    "parameters_to_matrix",
    "CaseId",
    "case_parameter_box",
    # Geometry
    "Mesh",
    "GeometricMap",
    # Space-time fields and KKT systems
    "VariableRole",
    "TimeGrid",
    "SpaceTimeField",
    "StepLayout",
    "StateOperators",
    "ObjectiveOperators",
    "KKTRightHandSide",
    "BlockKKT",
    "KKTSolution",
    # Snapshots and bases
    "SnapshotSet",
    "InnerProduct",
    "ReducedBasis",
    # Reduced models
    "PARABOLIC",
    "STOKES",
    "BasisSet",
    "AggregatedSpace",
    "ReducedFamily",
    "ReducedModel",
    "OnlineSolution",
    "ErrorReport",
    # Artifacts and statistics
    "ArtifactRecord",
    "RunManifest",
    "SnapshotStats",
    "BenchmarkRow",
]
