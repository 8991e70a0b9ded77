#!/usr/bin/env python3
"""
Space-time block operators of the all-at-once discretization.

Backward Euler in time gives the block lower-bidiagonal state operator
𝒦 with diagonal M + Δt·D_a (+ unscaled constraint rows) and subdiagonal −M.
The adjoint equation is its transpose, which is forward Euler marching
backward in time, so no separate adjoint scheme exists.
"""

import logging
from typing import Optional

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..exceptions import KKTError
from ..models.fields import TimeGrid

logger = logging.getLogger(__name__)


def _require_square(name: str, matrix: sp.spmatrix) -> None:
    if matrix.shape[0] != matrix.shape[1]:
        raise KKTError(f"{name} must be square, got shape {matrix.shape}")


def build_bidiagonal(diagonal: sp.spmatrix, subdiagonal: sp.spmatrix, n_steps: int) -> sp.csr_matrix:
    """Block lower-bidiagonal matrix with constant blocks."""
    if diagonal.shape != subdiagonal.shape:
        raise KKTError(
            f"Diagonal block {diagonal.shape} and subdiagonal block {subdiagonal.shape} differ in shape"
        )
    main = sp.kron(sp.identity(n_steps, format="csr"), diagonal, format="csr")
    if n_steps == 1:
        return main
    lower = sp.kron(sp.eye(n_steps, k=-1, format="csr"), subdiagonal, format="csr")
    return (main + lower).tocsr()


def build_state_spacetime(
    D_a: sp.spmatrix,
    M: sp.spmatrix,
    grid: TimeGrid,
    constraint: Optional[sp.spmatrix] = None,
) -> sp.csr_matrix:
    """
    Space-time state operator 𝒦.

    Args:
        D_a: Spatial operator, scaled by Δt on the diagonal
        M: History (mass) coupling
        grid: Time grid
        constraint: Optional unscaled rows added to the diagonal (Stokes continuity)

    Raises:
        KKTError: On shape mismatch
    """
    _require_square("D_a", D_a)
    _require_square("M", M)
    if D_a.shape != M.shape:
        raise KKTError(f"D_a shape {D_a.shape} does not match M shape {M.shape}")
    diagonal = sp.csr_matrix(M + grid.dt * D_a)
    if constraint is not None:
        if constraint.shape != M.shape:
            raise KKTError(f"Constraint shape {constraint.shape} does not match M shape {M.shape}")
        diagonal = diagonal + constraint
    return build_bidiagonal(sp.csr_matrix(diagonal), -sp.csr_matrix(M), grid.n_steps)


def build_control_coupling(D_c: sp.spmatrix, grid: TimeGrid, n_state: Optional[int] = None) -> sp.csr_matrix:
    """
    Block diagonal control coupling 𝒞 = I_{N_t} ⊗ D_c.

    Raises:
        KKTError: If D_c does not have n_state rows
    """
    if n_state is not None and D_c.shape[0] != n_state:
        raise KKTError(f"Control operator has {D_c.shape[0]} rows, state step has {n_state}")
    return sp.kron(sp.identity(grid.n_steps, format="csr"), sp.csr_matrix(D_c), format="csr")


def march_backward_euler(
    diagonal: sp.spmatrix,
    subdiagonal: sp.spmatrix,
    rhs: np.ndarray,
) -> np.ndarray:
    """
    Solve a block lower-bidiagonal system step by step.

    diagonal·x_k = rhs_k − subdiagonal·x_{k−1}, with x_0 = 0 (any initial
    data belongs in rhs_1). One sparse LU factorization is reused for all steps.

    Args:
        diagonal: Diagonal block
        subdiagonal: Subdiagonal block
        rhs: (n_steps, n) right-hand sides

    Returns:
        (n_steps, n) solution
    """
    rhs = np.asarray(rhs, dtype=float)
    lu = spla.splu(sp.csc_matrix(diagonal))
    sub = sp.csr_matrix(subdiagonal)
    out = np.zeros_like(rhs)
    previous = np.zeros(rhs.shape[1])
    for k in range(rhs.shape[0]):
        out[k] = lu.solve(rhs[k] - sub @ previous)
        previous = out[k]
    return out


def march_state(
    D_a: sp.spmatrix,
    M: sp.spmatrix,
    grid: TimeGrid,
    y0: np.ndarray,
    forcing: np.ndarray,
    constraint: Optional[sp.spmatrix] = None,
) -> np.ndarray:
    """
    Sequential backward Euler for (M + Δt·D_a)y_k = M·y_{k−1} + Δt·g_k.

    Returns:
        (N_t, n) states y_1, …, y_{N_t}
    """
    diagonal = sp.csr_matrix(M + grid.dt * D_a)
    if constraint is not None:
        diagonal = diagonal + constraint
    rhs = grid.dt * np.asarray(forcing, dtype=float).reshape(grid.n_steps, -1).copy()
    rhs[0] += M @ np.asarray(y0, dtype=float)
    return march_backward_euler(diagonal, -sp.csr_matrix(M), rhs)
