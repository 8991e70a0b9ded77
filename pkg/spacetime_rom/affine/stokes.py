#!/usr/bin/env python3
"""
Affine decomposition of the Stokes cavity control problem.

Taylor–Hood P2–P1 discretization of

    ∂y/∂t − µ_phys Δy + ∇π = u,   div y = 0

on the unit square stretched horizontally by µ_geo. One state step holds
[velocity, pressure, mean multiplier]; the zero-mean pressure condition is
enforced with one scalar multiplier per step, so the step blocks read

    mass        blockdiag(M, 0, 0)
    operator    [[A, Dᵀ, 0], [0, 0, 0], [0, 0, 0]]     (Δt-scaled)
    constraint  [[0, 0, 0], [D, 0, m], [0, mᵀ, 0]]     (unscaled)

with m_i = ∫ψ_i on the reference square (the mean condition is unaffected
by the stretch).
"""

import logging
from typing import Dict

import numpy as np
import scipy.sparse as sp

from ..exceptions import AffineError, AssemblyError
from ..fem.assembly import assemble_directional_stiffness, assemble_divergence, assemble_mass
from ..fem.mesh import STOKES_TAGS
from ..fem.spaces import FunctionSpace
from ..models.kkt import StepLayout
from ..models.mesh import Mesh
from .operators import AffineOperator, CaseOperators

logger = logging.getLogger(__name__)

STOKES_TERM_COUNTS = {
    "mass": 1,
    "operator": 4,
    "constraint": 2,
    "observation": 1,
    "control_coupling": 1,
    "control_mass": 1,
    "target": 0,
}


def stokes_step_layout(spaces: Dict[str, FunctionSpace]) -> StepLayout:
    return StepLayout(
        (("state", spaces["velocity"].dimension), ("pressure", spaces["pressure"].dimension), ("mean", 1))
    )


def _momentum(matrix: sp.spmatrix, n_p: int) -> sp.csr_matrix:
    """Velocity-velocity block padded to the full step."""
    return sp.block_diag([sp.csr_matrix(matrix), sp.csr_matrix((n_p + 1, n_p + 1))], format="csr")


def _gradient(divergence: sp.spmatrix, n_v: int) -> sp.csr_matrix:
    """Dᵀ in the momentum rows, pressure columns."""
    n_p = divergence.shape[0]
    return sp.bmat(
        [
            [None, sp.csr_matrix(divergence.T), None],
            [sp.csr_matrix((n_p, n_v)), None, None],
            [None, None, sp.csr_matrix((1, 1))],
        ],
        format="csr",
    )


def _continuity(divergence: sp.spmatrix, mean_weights: np.ndarray, n_v: int) -> sp.csr_matrix:
    n_p = divergence.shape[0]
    m = sp.csr_matrix(mean_weights.reshape(-1, 1))
    return sp.bmat(
        [
            [sp.csr_matrix((n_v, n_v)), None, None],
            [sp.csr_matrix(divergence), sp.csr_matrix((n_p, n_p)), m],
            [None, m.T, sp.csr_matrix((1, 1))],
        ],
        format="csr",
    )


def stokes_affine_decomposition(mesh: Mesh, spaces: Dict[str, FunctionSpace]) -> CaseOperators:
    """
    Build the step-level affine families of the Stokes cavity problem.

    Args:
        mesh: Unit-square reference mesh
        spaces: "velocity" (P2 vector) and "pressure" (P1 scalar) spaces

    Returns:
        Case operators on the full [velocity, pressure, mean] step

    Raises:
        AffineError: If a tag or a space is missing
    """
    missing = [tag for tag in STOKES_TAGS if tag not in mesh.declared_tags]
    missing += [name for name in ("velocity", "pressure") if name not in spaces]
    if missing:
        raise AffineError(f"Stokes decomposition is missing: {', '.join(missing)}")
    velocity, pressure = spaces["velocity"], spaces["pressure"]
    n_v, n_p = velocity.dimension, pressure.dimension

    try:
        mass_v = assemble_mass(velocity)
        stiffness_xx = assemble_directional_stiffness(velocity, 0)
        stiffness_yy = assemble_directional_stiffness(velocity, 1)
        divergence_x = assemble_divergence(velocity, pressure, axis=0)
        divergence_y = assemble_divergence(velocity, pressure, axis=1)
        mean_weights = np.asarray(assemble_mass(pressure) @ np.ones(n_p)).ravel()
    except AssemblyError as e:
        raise AffineError(f"Stokes assembly failed: {e}") from e

    step_mass = _momentum(mass_v, n_p)
    operator = AffineOperator(
        [
            ("mu_phys*mu_geo^-1", _momentum(stiffness_xx, n_p)),
            ("mu_phys*mu_geo", _momentum(stiffness_yy, n_p)),
            ("1", _gradient(divergence_x, n_v)),
            ("mu_geo", _gradient(divergence_y, n_v)),
        ]
    )
    # Continuity rows carry the same divergence form as the momentum rows.
    constraint = AffineOperator(
        [
            ("1", _continuity(divergence_x, mean_weights, n_v)),
            ("mu_geo", _continuity(divergence_y, np.zeros(n_p), n_v)),
        ]
    )
    coupling = sp.vstack([mass_v, sp.csr_matrix((n_p + 1, n_v))], format="csr")

    ops = CaseOperators(
        mass=AffineOperator([("mu_geo", step_mass)]),
        operator=operator,
        constraint=constraint,
        observation=AffineOperator([("mu_geo", step_mass)]),
        control_coupling=AffineOperator([("mu_geo", coupling)]),
        control_mass=AffineOperator([("mu_geo", mass_v)]),
        target=None,
        spaces={"velocity": velocity, "pressure": pressure},
        control_dofs=np.arange(n_v),
        term_counts=dict(STOKES_TERM_COUNTS),
    )
    logger.debug(
        f"Stokes affine families: Q_a={operator.q}, Q_constraint={constraint.q}, "
        f"{n_v} velocity dofs, {n_p} pressure dofs"
    )
    return ops
