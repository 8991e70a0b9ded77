"""
Full-order space-time solvers: the block-bidiagonal state operator, the
all-at-once KKT system, its sparse direct solve and the oracles used to
check it (time marching, reduced gradient, inf-sup constant).
"""

from .kkt import (
    adjoint_solve,
    assemble_kkt,
    constraint_block,
    inf_sup_constant,
    kkt_residual,
    objective_block,
    objective_value,
    quadratic_objective,
    reduced_gradient,
    solve_kkt,
    state_solve,
    symmetry_defect,
)
from .spacetime import (
    build_bidiagonal,
    build_control_coupling,
    build_state_spacetime,
    march_backward_euler,
    march_state,
)

__all__ = [
    # Space-time operators
    "build_bidiagonal",
    "build_state_spacetime",
    "build_control_coupling",
    "march_backward_euler",
    "march_state",
    # KKT system
    "objective_block",
    "constraint_block",
    "assemble_kkt",
    "solve_kkt",
    "objective_value",
    "quadratic_objective",
    "state_solve",
    "adjoint_solve",
    "reduced_gradient",
    "kkt_residual",
    "symmetry_defect",
    "inf_sup_constant",
]
