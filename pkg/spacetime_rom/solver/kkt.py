#!/usr/bin/env python3
"""
Full-order all-at-once KKT system.

    [ Δt ℳ_obs      0        𝒦ᵀ    ] [y]   [Δt ℳ_obs y_d]
    [   0       αΔt ℳ_u   −Δt𝒞ᵀ   ] [u] = [     0      ]
    [   𝒦        −Δt𝒞       0     ] [p]   [ ℳy₀ + Δt g ]

The system is factorized once with a sparse LU with threshold pivoting,
which handles the symmetric indefinite matrix.
"""

import logging
import time
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..constants import KKT_RESIDUAL_TOLERANCE, PIVOT_WARNING_RATIO
from ..exceptions import KKTError, SingularSystemError
from ..models.fields import SpaceTimeField, TimeGrid
from ..models.kkt import (
    BlockKKT,
    KKTRightHandSide,
    KKTSolution,
    ObjectiveOperators,
    StateOperators,
    StepLayout,
)
from .spacetime import build_control_coupling, build_state_spacetime

logger = logging.getLogger(__name__)


def objective_block(
    observation_mass: Optional[sp.spmatrix],
    control_mass: Optional[sp.spmatrix],
    alpha: float,
    grid: TimeGrid,
    n_state: int,
    n_control: int,
) -> sp.csr_matrix:
    """blockdiag(Δt·I⊗M_obs, αΔt·I⊗M_u); a None block is zero."""
    eye = sp.identity(grid.n_steps, format="csr")
    top = (
        sp.kron(eye, grid.dt * sp.csr_matrix(observation_mass), format="csr")
        if observation_mass is not None
        else sp.csr_matrix((grid.n_steps * n_state, grid.n_steps * n_state))
    )
    bottom = (
        sp.kron(eye, alpha * grid.dt * sp.csr_matrix(control_mass), format="csr")
        if control_mass is not None
        else sp.csr_matrix((grid.n_steps * n_control, grid.n_steps * n_control))
    )
    return sp.block_diag([top, bottom], format="csr")


def constraint_block(
    state_ops: Optional[StateOperators],
    control_op: Optional[sp.spmatrix],
    grid: TimeGrid,
    n_state: int,
    n_control: int,
) -> sp.csr_matrix:
    """[𝒦, −Δt𝒞]; a None part is zero."""
    rows = grid.n_steps * n_state
    if state_ops is not None:
        state = build_state_spacetime(state_ops.operator, state_ops.mass, grid, state_ops.constraint)
    else:
        state = sp.csr_matrix((rows, rows))
    if control_op is not None:
        control = -grid.dt * build_control_coupling(control_op, grid, n_state)
    else:
        control = sp.csr_matrix((rows, grid.n_steps * n_control))
    return sp.hstack([state, control], format="csr")


def assemble_kkt(
    state_ops: StateOperators,
    control_op: sp.spmatrix,
    objective_ops: ObjectiveOperators,
    grid: TimeGrid,
    rhs_data: KKTRightHandSide,
    layout: Optional[StepLayout] = None,
) -> BlockKKT:
    """
    Assemble the all-at-once KKT system.

    Args:
        state_ops: Step-level mass, operator and constraint blocks
        control_op: D_c, (n_step, n_control)
        objective_ops: Observation and control masses and α
        grid: Time grid
        rhs_data: Target load, forcing and initial state
        layout: Step layout; defaults to a single "state" block

    Returns:
        The block system

    Raises:
        KKTError: On incompatible block shapes or α ≤ 0
    """
    if not objective_ops.alpha > 0.0:
        raise KKTError(f"Control regularization alpha must be positive, got {objective_ops.alpha!r}")
    n_state = state_ops.mass.shape[0]
    n_control = control_op.shape[1]
    layout = layout or StepLayout((("state", n_state),))
    if layout.size != n_state:
        raise KKTError(f"Step layout size {layout.size} does not match state step size {n_state}")
    if objective_ops.observation_mass.shape != (n_state, n_state):
        raise KKTError(
            f"Observation mass shape {objective_ops.observation_mass.shape} does not match "
            f"state step size {n_state}"
        )
    if objective_ops.control_mass.shape != (n_control, n_control):
        raise KKTError(
            f"Control mass shape {objective_ops.control_mass.shape} does not match "
            f"{n_control} control dofs"
        )
    expected = (grid.n_steps, n_state)
    for name in ("target_load", "forcing"):
        if np.shape(getattr(rhs_data, name)) != expected:
            raise KKTError(f"rhs {name} has shape {np.shape(getattr(rhs_data, name))}, expected {expected}")

    a = objective_block(
        objective_ops.observation_mass, objective_ops.control_mass, objective_ops.alpha, grid, n_state, n_control
    )
    b = constraint_block(state_ops, control_op, grid, n_state, n_control)
    f = np.concatenate([grid.dt * np.asarray(rhs_data.target_load).ravel(), np.zeros(grid.n_steps * n_control)])
    g = grid.dt * np.asarray(rhs_data.forcing, dtype=float).copy()
    if rhs_data.initial_state is not None:
        g[0] += state_ops.mass @ np.asarray(rhs_data.initial_state, dtype=float)
    return BlockKKT(A=a, B=b, F=f, G=g.ravel(), grid=grid, layout=layout, control_size=n_control)


def _relative_residual(matrix: sp.spmatrix, solution: np.ndarray, rhs: np.ndarray) -> float:
    scale = float(np.max(np.abs(rhs))) if rhs.size else 0.0
    residual = float(np.max(np.abs(matrix @ solution - rhs))) if rhs.size else 0.0
    return residual / scale if scale > 0.0 else residual


def solve_kkt(system: BlockKKT) -> KKTSolution:
    """
    Solve the KKT system with a sparse direct factorization.

    One step of iterative refinement is applied when the relative residual
    exceeds the tolerance.

    Raises:
        SingularSystemError: If the factorization is singular
    """
    start = time.perf_counter()
    matrix = system.matrix().tocsc()
    rhs = system.rhs()
    try:
        lu = spla.splu(matrix)
    except RuntimeError as e:
        raise SingularSystemError(
            f"KKT factorization of dimension {system.dimension} failed: {e}",
            smallest_pivot=0.0,
            suspected_cause="missing Dirichlet constraints or a rank-deficient constraint block",
        ) from e
    pivots = np.abs(lu.U.diagonal())
    smallest = float(np.min(pivots)) if pivots.size else 0.0
    largest = float(np.max(pivots)) if pivots.size else 0.0
    if smallest <= PIVOT_WARNING_RATIO * largest:
        raise SingularSystemError(
            f"KKT factorization of dimension {system.dimension} is numerically singular",
            smallest_pivot=smallest,
            suspected_cause="missing Dirichlet constraints or a rank-deficient constraint block",
        )
    solution = lu.solve(rhs)
    residual = _relative_residual(matrix, solution, rhs)
    if residual > KKT_RESIDUAL_TOLERANCE:
        solution = solution + lu.solve(rhs - matrix @ solution)
        residual = _relative_residual(matrix, solution, rhs)
        if residual > KKT_RESIDUAL_TOLERANCE:
            logger.warning(
                f"KKT residual {residual:.3e} above tolerance {KKT_RESIDUAL_TOLERANCE:.0e} after refinement"
            )
    elapsed = time.perf_counter() - start
    logger.debug(
        f"Solved KKT system of dimension {system.dimension} in {elapsed:.3f}s "
        f"(residual {residual:.2e}, smallest pivot {smallest:.2e})"
    )
    return KKTSolution(
        x=solution[: system.n_x],
        p=solution[system.n_x :],
        grid=system.grid,
        layout=system.layout,
        control_size=system.control_size,
        residual=residual,
        smallest_pivot=smallest,
        wall_time=elapsed,
    )


def objective_value(
    x: Tuple[SpaceTimeField, SpaceTimeField],
    y_d: SpaceTimeField,
    alpha: float,
    grid: TimeGrid,
    observation_mass: sp.spmatrix,
    control_mass: sp.spmatrix,
) -> float:
    """
    Rectangle-rule objective Δt·Σ_k [½(y_k−y_{d,k})ᵀM_obs(y_k−y_{d,k}) + (α/2)u_kᵀM_u u_k].

    Args:
        x: (state, control) fields
        y_d: Desired state
        alpha: Control weight
        grid: Time grid
        observation_mass: M_obs (restricted to the observation domain)
        control_mass: M_u
    """
    state, control = x
    diff = state.values - y_d.values
    tracking = np.sum(diff * (observation_mass @ diff.T).T)
    cost = np.sum(control.values * (control_mass @ control.values.T).T)
    return float(grid.dt * (0.5 * tracking + 0.5 * alpha * cost))


def quadratic_objective(system: BlockKKT, x: np.ndarray, constant: float = 0.0) -> float:
    """½xᵀAx − Fᵀx + c."""
    return float(0.5 * x @ (system.A @ x) - system.F @ x + constant)


def state_solve(system: BlockKKT, control: np.ndarray) -> np.ndarray:
    """Solve 𝒦y = G + Δt𝒞u for the space-time state."""
    rhs = system.G - system.control_block() @ control
    return spla.spsolve(system.state_block().tocsc(), rhs)


def adjoint_solve(system: BlockKKT, state: np.ndarray) -> np.ndarray:
    """Solve 𝒦ᵀp = F_y − A_yy·y."""
    n = system.n_state
    rhs = system.F[:n] - system.A[:n, :n] @ state
    return spla.spsolve(system.state_block().T.tocsc(), rhs)


def reduced_gradient(system: BlockKKT, control: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Gradient of the reduced objective Ĵ(u) via one state and one adjoint solve.

    Returns:
        (gradient, Ĵ(u) without the output constant)
    """
    n = system.n_state
    state = state_solve(system, control)
    adjoint = adjoint_solve(system, state)
    a_uu = system.A[n:, n:]
    gradient = a_uu @ control - system.F[n:] + system.control_block().T @ adjoint
    x = np.concatenate([state, control])
    return np.asarray(gradient), quadratic_objective(system, x)


def kkt_residual(system: BlockKKT, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """K·[x; p] − [F; G]."""
    return system.matrix() @ np.concatenate([x, p]) - system.rhs()


def symmetry_defect(system: BlockKKT) -> float:
    matrix = system.matrix()
    diff = sp.csr_matrix(matrix - matrix.T)
    return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0


def inf_sup_constant(system: BlockKKT, primal_gram: sp.spmatrix, adjoint_gram: sp.spmatrix) -> float:
    """
    Discrete inf-sup constant of the constraint block,

        β = min_p sup_x pᵀBx / (‖x‖_X ‖p‖_Q),

    the square root of the smallest eigenvalue of B X⁻¹ Bᵀ q = λ Q q.
    Dense in the adjoint dimension; meant for small systems.

    Raises:
        KKTError: If the gram matrices do not match the blocks
    """
    if primal_gram.shape != (system.n_x, system.n_x) or adjoint_gram.shape != (system.n_p, system.n_p):
        raise KKTError(
            f"Gram shapes {primal_gram.shape} / {adjoint_gram.shape} do not match n_x={system.n_x}, n_p={system.n_p}"
        )
    factor = spla.splu(sp.csc_matrix(primal_gram))
    bt = system.B.T.toarray()
    schur = system.B @ factor.solve(bt)
    schur = 0.5 * (schur + schur.T)
    smallest = la.eigh(schur, sp.csr_matrix(adjoint_gram).toarray(), eigvals_only=True, subset_by_index=[0, 0])
    return float(np.sqrt(max(smallest[0], 0.0)))
