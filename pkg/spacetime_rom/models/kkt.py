#!/usr/bin/env python3
"""
Space-Time KKT Models

This module contains the containers for the all-at-once optimality system
[A Bᵀ; B 0]·[x; p] = [F; G] and its solution.

Unknowns are ordered x = [y_1, …, y_{N_t}, u_1, …, u_{N_t}] and
p = [p_1, …, p_{N_t}]. Each state step y_k may itself be composed of blocks
(velocity, pressure, pressure-mean multiplier for Stokes), described by a
StepLayout.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..exceptions import KKTError
from .fields import SpaceTimeField, TimeGrid, VariableRole

# Step blocks that carry a variable role; the "mean" block holds the
# pressure zero-mean multiplier and has no role.
STATE_BLOCK_ROLES = {
    "state": VariableRole.STATE,
    "pressure": VariableRole.PRESSURE,
}
ADJOINT_BLOCK_ROLES = {
    "state": VariableRole.ADJOINT,
    "pressure": VariableRole.ADJOINT_PRESSURE,
}


@dataclass(frozen=True)
class StepLayout:
    """
    Ordered blocks of one time step of the state (and adjoint) vector.

    Attributes:
        blocks: (name, size) pairs, e.g. (("state", 722), ("pressure", 121), ("mean", 1))
    """

    blocks: Tuple[Tuple[str, int], ...]

    @property
    def size(self) -> int:
        return sum(size for _, size in self.blocks)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.blocks)

    def offset(self, name: str) -> int:
        position = 0
        for block, size in self.blocks:
            if block == name:
                return position
            position += size
        raise KKTError(f"StepLayout has no block '{name}' (blocks: {', '.join(self.names)})")

    def block_size(self, name: str) -> int:
        for block, size in self.blocks:
            if block == name:
                return size
        raise KKTError(f"StepLayout has no block '{name}' (blocks: {', '.join(self.names)})")

    def slice(self, name: str) -> slice:
        start = self.offset(name)
        return slice(start, start + self.block_size(name))

    def split(self, vector: np.ndarray, n_steps: int) -> Dict[str, np.ndarray]:
        """Split a step-major space-time vector into (n_steps, block_size) arrays."""
        steps = np.asarray(vector, dtype=float).reshape(n_steps, self.size)
        return {name: steps[:, self.slice(name)] for name in self.names}

    def embed(self, name: str, block_vectors: np.ndarray, n_steps: int) -> np.ndarray:
        """
        Place space-time vectors of one block into full step-major positions.

        Args:
            name: Block name
            block_vectors: (n_steps * block_size, r) array, step-major
            n_steps: Number of time steps

        Returns:
            (n_steps * size, r) array with zeros outside the block
        """
        block_vectors = np.asarray(block_vectors, dtype=float)
        squeeze = block_vectors.ndim == 1
        if squeeze:
            block_vectors = block_vectors[:, None]
        width = block_vectors.shape[1]
        out = np.zeros((n_steps, self.size, width))
        out[:, self.slice(name), :] = block_vectors.reshape(n_steps, self.block_size(name), width)
        out = out.reshape(n_steps * self.size, width)
        return out[:, 0] if squeeze else out


@dataclass(frozen=True)
class StateOperators:
    """
    Step-level operators of the state equation.

    The diagonal block of the space-time operator is mass + Δt·operator +
    constraint, the subdiagonal block is -mass.

    Attributes:
        mass: History coupling matrix M
        operator: Spatial operator D_a, scaled by Δt
        constraint: Unscaled constraint rows (Stokes continuity and mean rows)
    """

    mass: sp.spmatrix
    operator: sp.spmatrix
    constraint: Optional[sp.spmatrix] = None


@dataclass(frozen=True)
class ObjectiveOperators:
    """
    Step-level operators of the quadratic objective.

    Attributes:
        observation_mass: M_obs on the state step (zero outside the observed region)
        control_mass: M_u on the control dofs
        alpha: Control regularization weight
    """

    observation_mass: sp.spmatrix
    control_mass: sp.spmatrix
    alpha: float


@dataclass(frozen=True, eq=False)
class KKTRightHandSide:
    """
    Data of the right-hand side F = [Δt·target_load; 0], G = ℳy₀ + Δt·g.

    Attributes:
        target_load: (N_t, n_step) rows M_obs·y_{d,k}
        forcing: (N_t, n_step) rows g_k
        initial_state: Optional (n_step,) initial state y₀
    """

    target_load: np.ndarray
    forcing: np.ndarray
    initial_state: Optional[np.ndarray] = None

    @classmethod
    def zeros(cls, n_steps: int, n_step: int) -> "KKTRightHandSide":
        return cls(np.zeros((n_steps, n_step)), np.zeros((n_steps, n_step)))


@dataclass(eq=False)
class BlockKKT:
    """
    The all-at-once saddle point system.

    Attributes:
        A: Objective block, (n_x, n_x)
        B: Constraint block [𝒦, -Δt𝒞], (n_p, n_x)
        F: Objective right-hand side, (n_x,)
        G: Constraint right-hand side, (n_p,)
        grid: Time grid
        layout: Step layout of state and adjoint
        control_size: Control dofs per step
    """

    A: sp.csr_matrix
    B: sp.csr_matrix
    F: np.ndarray
    G: np.ndarray
    grid: TimeGrid
    layout: StepLayout
    control_size: int

    @property
    def n_state(self) -> int:
        return self.grid.n_steps * self.layout.size

    @property
    def n_control(self) -> int:
        return self.grid.n_steps * self.control_size

    @property
    def n_x(self) -> int:
        return self.n_state + self.n_control

    @property
    def n_p(self) -> int:
        return int(self.B.shape[0])

    @property
    def dimension(self) -> int:
        return self.n_x + self.n_p

    def matrix(self) -> sp.csr_matrix:
        return sp.bmat([[self.A, self.B.T], [self.B, None]], format="csr")

    def rhs(self) -> np.ndarray:
        return np.concatenate([self.F, self.G])

    def state_block(self) -> sp.csr_matrix:
        """The space-time state operator 𝒦."""
        return self.B[:, : self.n_state].tocsr()

    def control_block(self) -> sp.csr_matrix:
        """The coupling block -Δt𝒞."""
        return self.B[:, self.n_state :].tocsr()


@dataclass(eq=False)
class KKTSolution:
    """
    Solution of a space-time KKT system.

    Attributes:
        x: Primal unknowns [y; u]
        p: Adjoint unknowns
        grid: Time grid
        layout: Step layout
        control_size: Control dofs per step
        residual: Relative residual ‖K·sol − rhs‖_∞ / ‖rhs‖_∞
        smallest_pivot: Smallest absolute pivot of the factorization (NaN for dense solves)
        wall_time: Seconds spent assembling and solving
        objective: Objective value J, when computed
    """

    x: np.ndarray
    p: np.ndarray
    grid: TimeGrid
    layout: StepLayout
    control_size: int
    residual: float = float("nan")
    smallest_pivot: float = float("nan")
    wall_time: float = 0.0
    objective: Optional[float] = None
    metadata: Dict[str, float] = field(default_factory=dict)

    @property
    def n_state(self) -> int:
        return self.grid.n_steps * self.layout.size

    def state_vector(self) -> np.ndarray:
        return self.x[: self.n_state]

    def control_vector(self) -> np.ndarray:
        return self.x[self.n_state :]

    def fields(self) -> Dict[VariableRole, SpaceTimeField]:
        """Per-role space-time fields; the mean multipliers are left out."""
        n_steps = self.grid.n_steps
        out: Dict[VariableRole, SpaceTimeField] = {}
        state_parts = self.layout.split(self.state_vector(), n_steps)
        adjoint_parts = self.layout.split(self.p, n_steps)
        for name, role in STATE_BLOCK_ROLES.items():
            if name in state_parts:
                out[role] = SpaceTimeField(role, state_parts[name])
        for name, role in ADJOINT_BLOCK_ROLES.items():
            if name in adjoint_parts:
                out[role] = SpaceTimeField(role, adjoint_parts[name])
        out[VariableRole.CONTROL] = SpaceTimeField.from_flat(
            VariableRole.CONTROL, self.control_vector(), n_steps
        )
        return out

    def field(self, role: VariableRole) -> SpaceTimeField:
        return self.fields()[role]
