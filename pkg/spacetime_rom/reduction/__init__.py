"""
Model order reduction: POD, aggregated spaces with supremizer enrichment,
Galerkin projection, online solves, error measures and speedup studies.
"""

from .aggregation import aggregate, full_order_dimension, orthonormalize, reduced_dimension, state_only_space
from .errors import error_report, mean_errors, relative_error
from .galerkin import aggregation_diagnostic, galerkin_project, galerkin_residual, smallest_singular_value, solve_online
from .pod import compute_pod_basis, correlation_matrix, discarded_energy, lift, project, projection_errors
from .study import reduce_problem, speedup_study
from .supremizer import SupremizerOperator, compute_supremizer, inf_sup_sweep, reduced_inf_sup

__all__ = [
    # POD
    "correlation_matrix",
    "compute_pod_basis",
    "project",
    "lift",
    "projection_errors",
    "discarded_energy",
    # Aggregation and supremizers
    "orthonormalize",
    "aggregate",
    "state_only_space",
    "reduced_dimension",
    "full_order_dimension",
    "SupremizerOperator",
    "compute_supremizer",
    "reduced_inf_sup",
    "inf_sup_sweep",
    # Projection and online stage
    "galerkin_project",
    "solve_online",
    "smallest_singular_value",
    "galerkin_residual",
    "aggregation_diagnostic",
    # Errors and studies
    "relative_error",
    "error_report",
    "mean_errors",
    "reduce_problem",
    "speedup_study",
]
