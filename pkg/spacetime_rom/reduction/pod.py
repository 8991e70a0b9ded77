#!/usr/bin/env python3
"""
Proper orthogonal decomposition by the method of snapshots.

The correlation matrix C = SᵀXS / N_max is small (N_max × N_max), so its
full eigendecomposition is cheap; the basis vectors are recovered as
ξ_n = S·v_n / √(N_max·λ_n) and are X-orthonormal by construction.
"""

import logging
from typing import Optional, Union

import numpy as np
import scipy.linalg as la

from ..constants import POD_EIGENVALUE_TOLERANCE
from ..exceptions import PODError
from ..models.basis import InnerProduct, ReducedBasis, SnapshotSet
from ..models.fields import SpaceTimeField

logger = logging.getLogger(__name__)

SIGN_TOLERANCE = 1e-8


def correlation_matrix(snaps: SnapshotSet, ip: InnerProduct) -> np.ndarray:
    """C_ml = s_mᵀ X s_l / N_max, symmetrized."""
    if snaps.length != ip.size:
        raise PODError(
            f"{snaps.role.value} snapshots have length {snaps.length}, inner product expects {ip.size}"
        )
    gram = snaps.matrix.T @ ip.apply(snaps.matrix)
    gram = 0.5 * (gram + gram.T)
    return gram / snaps.count


def _fix_signs(basis: np.ndarray) -> np.ndarray:
    """Make the first clearly nonzero entry of every column positive."""
    for n in range(basis.shape[1]):
        column = basis[:, n]
        scale = np.max(np.abs(column)) if column.size else 0.0
        if scale == 0.0:
            continue
        first = np.flatnonzero(np.abs(column) > SIGN_TOLERANCE * scale)[0]
        if column[first] < 0.0:
            basis[:, n] = -column
    return basis


def compute_pod_basis(snaps: SnapshotSet, ip: InnerProduct, n: int) -> ReducedBasis:
    """
    Compute the first n POD modes of a snapshot set.

    Eigenvalues below POD_EIGENVALUE_TOLERANCE·λ₁ count as numerically zero;
    asking for more modes than the numerical rank returns the rank-sized
    basis with a warning.

    Args:
        snaps: Snapshots of one variable
        ip: Space-time inner product of that variable
        n: Number of modes

    Returns:
        X-orthonormal basis with its eigenvalues

    Raises:
        PODError: If n < 1 or all snapshots vanish
    """
    if n < 1:
        raise PODError(f"Number of POD modes must be at least 1, got {n}")
    correlation = correlation_matrix(snaps, ip)
    eigenvalues, eigenvectors = la.eigh(correlation)
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    eigenvectors = eigenvectors[:, order]
    if eigenvalues.size == 0 or eigenvalues[0] <= 0.0:
        raise PODError(f"All {snaps.role.value} snapshots vanish; no POD basis can be built")

    rank = int(np.sum(eigenvalues >= POD_EIGENVALUE_TOLERANCE * eigenvalues[0]))
    if n > rank:
        logger.warning(
            f"Requested {n} {snaps.role.value} POD modes but the snapshots have numerical rank {rank}; "
            f"keeping {rank}"
        )
        n = rank
    kept = eigenvalues[:n]
    basis = snaps.matrix @ eigenvectors[:, :n] / np.sqrt(snaps.count * kept)[None, :]
    basis = _fix_signs(basis)
    logger.debug(
        f"POD {snaps.role.value}: {n} modes, λ₁={kept[0]:.3e}, λ_N={kept[-1]:.3e}, "
        f"energy {float(np.sum(kept) / np.sum(eigenvalues)):.12f}"
    )
    return ReducedBasis(snaps.role, basis, kept, eigenvalues, ip.label)


def project(basis: ReducedBasis, field: Union[SpaceTimeField, np.ndarray], ip: InnerProduct) -> np.ndarray:
    """Coefficients ΞᵀX·field."""
    vector = field.flatten() if isinstance(field, SpaceTimeField) else np.asarray(field, dtype=float)
    if vector.shape[0] != basis.matrix.shape[0]:
        raise PODError(f"Field of length {vector.shape[0]} does not match basis length {basis.matrix.shape[0]}")
    return basis.matrix.T @ ip.apply(vector)


def lift(basis: ReducedBasis, coeffs: np.ndarray, n_steps: Optional[int] = None):
    """
    Ξ·coeffs, as a SpaceTimeField when n_steps is given.

    Raises:
        PODError: On a coefficient count mismatch
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape[0] != basis.size:
        raise PODError(f"{coeffs.shape[0]} coefficients given for a basis of size {basis.size}")
    vector = basis.matrix @ coeffs
    if n_steps is None:
        return vector
    return SpaceTimeField.from_flat(basis.role, vector, n_steps)


def projection_errors(basis: ReducedBasis, snaps: SnapshotSet, ip: InnerProduct) -> np.ndarray:
    """X-norm error ‖s_m − ΞΞᵀX s_m‖ per snapshot."""
    residual = snaps.matrix - basis.matrix @ (basis.matrix.T @ ip.apply(snaps.matrix))
    return np.sqrt(np.clip(np.sum(residual * ip.apply(residual), axis=0), 0.0, None))


def discarded_energy(basis: ReducedBasis) -> float:
    """Σ_{n>N} λ_n; times N_max it equals the summed squared projection errors."""
    return float(np.sum(basis.spectrum[basis.size :]))
