#!/usr/bin/env python3
"""
Reduced Order Models

This module contains the aggregated reduced space, the projected affine
reduced model and the result types of online solves and error reports.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Optional, Tuple

import numpy as np

from ..affine.theta import Theta
from .basis import ReducedBasis
from .case import CaseId
from .fields import TimeGrid
from .kkt import KKTSolution, StepLayout
from .parameter import Parameter, ParameterBox

PARABOLIC = "parabolic"
STOKES = "stokes"


@dataclass(frozen=True, eq=False)
class BasisSet:
    """
    Partitioned POD bases of one offline run.

    Attributes:
        kind: "parabolic" or "stokes"
        bases: Basis name → basis; "state", "adjoint", "control" and, for
            Stokes, "pressure", "adjoint_pressure", "supremizer",
            "adjoint_supremizer"
    """

    kind: str
    bases: Dict[str, ReducedBasis]

    def __getitem__(self, name: str) -> ReducedBasis:
        return self.bases[name]

    @property
    def n_max(self) -> int:
        """Largest common truncation size."""
        return min(basis.size for basis in self.bases.values())

    def truncate(self, n: int) -> "BasisSet":
        return BasisSet(self.kind, {name: basis.truncate(n) for name, basis in self.bases.items()})


@dataclass(frozen=True, eq=False)
class AggregatedSpace:
    """
    Role-wise reduced basis blocks shared by the state and the adjoint.

    Attributes:
        kind: "parabolic" or "stokes"
        n: Number of POD modes retained per role
        blocks: State-step block name → space-time basis matrix (step-major, X-orthonormal)
        control: Control basis matrix
        deficiency: Directions dropped by re-orthonormalization, per block
    """

    kind: str
    n: int
    blocks: Dict[str, np.ndarray]
    control: np.ndarray
    deficiency: Dict[str, int] = field(default_factory=dict)

    @property
    def state_dimension(self) -> int:
        return sum(int(matrix.shape[1]) for matrix in self.blocks.values())

    @property
    def control_dimension(self) -> int:
        return int(self.control.shape[1])

    @property
    def n_tot(self) -> int:
        """Reduced system dimension: state + control + adjoint."""
        return 2 * self.state_dimension + self.control_dimension


def embed_blocks(space: AggregatedSpace, layout: StepLayout, n_steps: int) -> np.ndarray:
    """Place every reduced state block at its step-major position in the full state vector."""
    columns = [layout.embed(name, matrix, n_steps) for name, matrix in space.blocks.items()]
    return np.hstack(columns)


@dataclass(frozen=True, eq=False)
class ReducedFamily:
    """
    Dense affine family Σ_q θ_q(µ)·R_q.

    Attributes:
        descriptors: θ descriptors, one per term
        stack: (Q, ...) array of projected terms
    """

    descriptors: Tuple[str, ...]
    stack: np.ndarray

    @property
    def thetas(self) -> Tuple[Theta, ...]:
        return tuple(Theta.parse(d) for d in self.descriptors)

    @property
    def q(self) -> int:
        return len(self.descriptors)

    def evaluate(self, mu: Parameter) -> np.ndarray:
        coefficients = np.array([theta(mu) for theta in self.thetas], dtype=float)
        return np.tensordot(coefficients, self.stack, axes=1)


@dataclass(frozen=True, eq=False)
class ReducedModel:
    """
    Galerkin-projected affine KKT system.

    Attributes:
        case_id: Benchmark the model belongs to
        grid: Time grid
        layout: Full-order state step layout
        control_size: Full-order control dofs per step
        space: Aggregated reduced space
        box: Parameter box used to validate online parameters
        families: "A", "B", "F", "G" and "c" reduced affine families
    """

    case_id: CaseId
    grid: TimeGrid
    layout: StepLayout
    control_size: int
    space: AggregatedSpace
    box: ParameterBox
    families: Dict[str, ReducedFamily]

    @property
    def n_state(self) -> int:
        return self.space.state_dimension

    @property
    def n_control(self) -> int:
        return self.space.control_dimension

    @property
    def n_tot(self) -> int:
        return self.space.n_tot

    @cached_property
    def state_trial(self) -> np.ndarray:
        """Reduced state blocks embedded in the full step-major state layout."""
        return embed_blocks(self.space, self.layout, self.grid.n_steps)

    @cached_property
    def trial(self) -> np.ndarray:
        """Z_x = blockdiag(state blocks, control block)."""
        state = self.state_trial
        control = self.space.control
        top = np.hstack([state, np.zeros((state.shape[0], control.shape[1]))])
        bottom = np.hstack([np.zeros((control.shape[0], state.shape[1])), control])
        return np.vstack([top, bottom])

    @property
    def test(self) -> np.ndarray:
        """Z_p: the adjoint shares the state blocks."""
        return self.state_trial

    def system(self, mu: Parameter) -> Tuple[np.ndarray, np.ndarray]:
        """Dense reduced matrix [[A, Bᵀ], [B, 0]] and right-hand side at µ."""
        a = self.families["A"].evaluate(mu)
        b = self.families["B"].evaluate(mu)
        f = self.families["F"].evaluate(mu)
        g = self.families["G"].evaluate(mu)
        n_p = b.shape[0]
        matrix = np.block([[a, b.T], [b, np.zeros((n_p, n_p))]])
        return matrix, np.concatenate([f, g])

    def output_constant(self, mu: Parameter) -> float:
        return float(self.families["c"].evaluate(mu))


@dataclass(eq=False)
class OnlineSolution:
    """
    Result of one reduced solve.

    Attributes:
        parameter: µ
        coefficients: Reduced unknowns [x_N; p_N]
        solution: Lifted full-order vectors (homogeneous part)
        objective: J_N(µ)
        wall_time: Seconds spent assembling and solving the reduced system
    """

    parameter: Parameter
    coefficients: np.ndarray
    solution: KKTSolution
    objective: float
    wall_time: float


@dataclass(frozen=True)
class ErrorReport:
    """
    Relative errors between a full-order and a reduced solution.

    Attributes:
        errors: Role name → Δt-weighted relative norm of the error
        output_error: |J_FE − J_ROM| / |J_FE|
        absolute: Role names (or "output") reported as absolute errors because the reference vanished
    """

    errors: Dict[str, float]
    output_error: float
    absolute: Tuple[str, ...] = ()

    def get(self, role: str, default: Optional[float] = None) -> Optional[float]:
        return self.errors.get(role, default)
