#!/usr/bin/env python3
"""
Affine decomposition of the Graetz boundary control problem.

State equation on the physical channel, traced back to the reference
domain:

    ∂y/∂t − µ_diff Δy + x₂(1 − x₂) ∂y/∂x₁ = 0

with the horizontal stretch x ↦ 1 + µ_geo(x − 1) on Ω₂ ∪ Ω₃. The stretch
scales ∂x₁ by 1/µ_geo and the area element by µ_geo, so the diffusion splits
into xx / yy parts with θ = µ_diff/µ_geo and µ_diff·µ_geo while the
advection term keeps θ = 1 (the two factors cancel). The control acts on
Γ_C, whose edges are stretched as well.
"""

import logging
from typing import Dict

import numpy as np
import scipy.sparse as sp

from ..exceptions import AffineError, AssemblyError
from ..fem.assembly import (
    assemble_advection,
    assemble_boundary_mass,
    assemble_directional_stiffness,
    assemble_mass,
    assemble_stiffness,
)
from ..fem.mesh import GRAETZ_TAGS
from ..fem.spaces import FunctionSpace
from ..models.mesh import Mesh
from .operators import AffineOperator, AffineVector, CaseOperators

logger = logging.getLogger(__name__)

STRETCHED = ("omega_2", "omega_3")

# Documented term counts per family.
GRAETZ_TERM_COUNTS = {
    "mass": 2,
    "operator": 4,
    "observation": 1,
    "control_coupling": 1,
    "control_mass": 1,
    "target": 1,
}


def graetz_velocity(points: np.ndarray) -> np.ndarray:
    """Poiseuille profile (x₂(1 − x₂), 0)."""
    y = points[:, 1]
    return np.column_stack([y * (1.0 - y), np.zeros_like(y)])


def graetz_affine_decomposition(mesh: Mesh, spaces: Dict[str, FunctionSpace]) -> CaseOperators:
    """
    Build the step-level affine families of the Graetz problem.

    Args:
        mesh: Graetz reference mesh
        spaces: Must contain the scalar "state" space

    Returns:
        Case operators on the full state dof set

    Raises:
        AffineError: If the mesh lacks a Graetz tag or the state space is missing
    """
    missing = [tag for tag in GRAETZ_TAGS if tag not in mesh.declared_tags]
    missing += [name for name in ("omega_1",) + STRETCHED if name not in mesh.subdomain_names.values()]
    if missing:
        raise AffineError(f"Mesh is missing Graetz tags: {', '.join(missing)}")
    if "state" not in spaces:
        raise AffineError("Graetz decomposition needs a 'state' function space")
    space = spaces["state"]

    try:
        mass = AffineOperator(
            [
                ("1", assemble_mass(space, "omega_1")),
                ("mu_geo", assemble_mass(space, STRETCHED)),
            ]
        )
        operator = AffineOperator(
            [
                ("mu_diff", assemble_stiffness(space, "omega_1")),
                ("mu_diff*mu_geo^-1", assemble_directional_stiffness(space, 0, STRETCHED)),
                ("mu_diff*mu_geo", assemble_directional_stiffness(space, 1, STRETCHED)),
                ("1", assemble_advection(space, graetz_velocity)),
            ]
        )
        observation = AffineOperator([("mu_geo", assemble_mass(space, "omega_3"))])
        boundary = assemble_boundary_mass(space, "gamma_c")
    except AssemblyError as e:
        raise AffineError(f"Graetz assembly failed: {e}") from e

    control_dofs = np.unique(space.edge_dofs("gamma_c").ravel())
    coupling = sp.csr_matrix(boundary[:, control_dofs])
    control_mass = sp.csr_matrix(boundary[control_dofs, :][:, control_dofs])

    ops = CaseOperators(
        mass=mass,
        operator=operator,
        constraint=None,
        observation=observation,
        control_coupling=AffineOperator([("mu_geo", coupling)]),
        control_mass=AffineOperator([("mu_geo", control_mass)]),
        target=AffineVector([("mu_target", np.ones(space.dimension))]),
        spaces={"state": space},
        control_dofs=control_dofs,
        term_counts=dict(GRAETZ_TERM_COUNTS),
    )
    logger.debug(
        f"Graetz affine families: Q_m={mass.q}, Q_a={operator.q}, "
        f"{space.dimension} state dofs, {control_dofs.size} control dofs"
    )
    return ops
