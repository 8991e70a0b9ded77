#!/usr/bin/env python3
"""
Affine families of the space-time KKT system.

The step-level CaseOperators are lifted to the space-time blocks term by
term with the same builders the direct assembly uses, so every θ of a step
operator survives unchanged into A(µ), B(µ), F(µ), G(µ) and the output
constant c(µ) of J = ½xᵀAx − Fᵀx + c.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..exceptions import KKTError
from ..models.fields import TimeGrid
from ..models.kkt import BlockKKT, StateOperators, StepLayout
from ..models.parameter import Parameter
from ..solver.kkt import constraint_block, objective_block
from .operators import AffineOperator, AffineVector, CaseOperators

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AffineKKT:
    """
    Parameter-separable KKT system on the free dofs.

    Attributes:
        A: Objective block family, (n_x, n_x)
        B: Constraint block family, (n_p, n_x)
        F: Objective right-hand side family, (n_x,)
        G: Constraint right-hand side family, (n_p,)
        c: Output constant family, shape ()
        grid: Time grid
        layout: Free-dof step layout
        control_size: Control dofs per step
    """

    A: AffineOperator
    B: AffineOperator
    F: AffineVector
    G: AffineVector
    c: AffineVector
    grid: TimeGrid
    layout: StepLayout
    control_size: int

    @property
    def families(self):
        return {"A": self.A, "B": self.B, "F": self.F, "G": self.G, "c": self.c}

    @property
    def dimension(self) -> int:
        return self.A.shape[0] + self.B.shape[0]

    def evaluate(self, mu: Parameter) -> BlockKKT:
        return BlockKKT(
            A=self.A.evaluate(mu),
            B=self.B.evaluate(mu),
            F=self.F.evaluate(mu),
            G=self.G.evaluate(mu),
            grid=self.grid,
            layout=self.layout,
            control_size=self.control_size,
        )

    def output_constant(self, mu: Parameter) -> float:
        return float(self.c.evaluate(mu))


def affine_objective_block(ops: CaseOperators, alpha: float, grid: TimeGrid) -> AffineOperator:
    """Family of blockdiag(Δt·I⊗M_obs(µ), αΔt·I⊗M_u(µ))."""
    n, m = ops.step_size, ops.control_size
    size = grid.n_steps * (n + m)
    observed = ops.observation.map(
        lambda matrix: objective_block(matrix, None, alpha, grid, n, m), shape=(size, size)
    )
    control = ops.control_mass.map(
        lambda matrix: objective_block(None, matrix, alpha, grid, n, m), shape=(size, size)
    )
    return observed + control


def affine_constraint_block(ops: CaseOperators, grid: TimeGrid) -> AffineOperator:
    """Family of [𝒦(µ), −Δt𝒞(µ)]."""
    n, m = ops.step_size, ops.control_size
    shape = (grid.n_steps * n, grid.n_steps * (n + m))
    zero = sp.csr_matrix((n, n))

    def history(matrix):
        return constraint_block(StateOperators(matrix, zero), None, grid, n, m)

    def spatial(matrix):
        return constraint_block(StateOperators(zero, matrix), None, grid, n, m)

    def rows(matrix):
        return constraint_block(StateOperators(zero, zero, matrix), None, grid, n, m)

    def coupling(matrix):
        return constraint_block(None, matrix, grid, n, m)

    family = ops.mass.map(history, shape=shape) + ops.operator.map(spatial, shape=shape)
    if ops.constraint is not None:
        family = family + ops.constraint.map(rows, shape=shape)
    return family + ops.control_coupling.map(coupling, shape=shape)


def build_affine_kkt(
    ops: CaseOperators,
    alpha: float,
    grid: TimeGrid,
    layout: StepLayout,
    target_load: AffineVector,
    forcing: AffineVector,
    output_constant: AffineVector,
) -> AffineKKT:
    """
    Assemble the affine KKT families.

    Args:
        ops: Step-level families restricted to the free dofs
        alpha: Control weight
        grid: Time grid
        layout: Free-dof step layout
        target_load: (N_t, n) family of M_obs(y_d − lift) rows
        forcing: (N_t, n) family of the forcing rows g_k (the initial state is lifted, so ℳy₀ has no free part)
        output_constant: Scalar family c(µ)

    Raises:
        KKTError: On α ≤ 0 or inconsistent shapes
    """
    if not alpha > 0.0:
        raise KKTError(f"Control regularization alpha must be positive, got {alpha!r}")
    expected = (grid.n_steps, ops.step_size)
    for name, family in (("target_load", target_load), ("forcing", forcing)):
        if family.shape != expected:
            raise KKTError(f"{name} family has shape {family.shape}, expected {expected}")
    if layout.size != ops.step_size:
        raise KKTError(f"Step layout size {layout.size} does not match step size {ops.step_size}")

    n_control = grid.n_steps * ops.control_size
    f = target_load.map(
        lambda values: np.concatenate([grid.dt * values.ravel(), np.zeros(n_control)]),
        shape=(grid.n_steps * (ops.step_size + ops.control_size),),
    )
    g = forcing.map(lambda values: grid.dt * values.ravel(), shape=(grid.n_steps * ops.step_size,))
    system = AffineKKT(
        A=affine_objective_block(ops, alpha, grid),
        B=affine_constraint_block(ops, grid),
        F=f,
        G=g,
        c=output_constant,
        grid=grid,
        layout=layout,
        control_size=ops.control_size,
    )
    logger.debug(
        f"Affine KKT: dimension {system.dimension}, Q_A={system.A.q}, Q_B={system.B.q}, "
        f"Q_F={system.F.q}, Q_G={system.G.q}, Q_c={system.c.q}"
    )
    return system
