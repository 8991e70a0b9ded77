#!/usr/bin/env python3
"""
Pressure supremizers and the reduced inf-sup diagnostic.

The supremizer of a pressure field s at µ is the Riesz representative of
b(·, s; µ) in the velocity space: X_v·t_k = D(µ)ᵀ·s_k at every step k.
"""

import logging
from typing import Sequence, Union

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..affine.operators import AffineOperator
from ..exceptions import ReductionError
from ..models.basis import InnerProduct, SnapshotSet
from ..models.fields import SpaceTimeField, VariableRole
from ..models.parameter import Parameter

logger = logging.getLogger(__name__)


class SupremizerOperator:
    """
    Factorized velocity gram matrix paired with the divergence family.

    Args:
        divergence: b(v, q; µ) family, (𝒩_p, 𝒩_v)
        velocity_ip: Velocity space-time inner product

    Raises:
        ReductionError: If the shapes disagree or X_v is singular
    """

    def __init__(self, divergence: AffineOperator, velocity_ip: InnerProduct):
        if divergence.shape[1] != velocity_ip.spatial.shape[0]:
            raise ReductionError(
                f"Divergence family has {divergence.shape[1]} velocity columns, "
                f"velocity inner product has size {velocity_ip.spatial.shape[0]}"
            )
        self.divergence = divergence
        self.velocity_ip = velocity_ip
        try:
            self._factor = spla.splu(sp.csc_matrix(velocity_ip.spatial))
        except RuntimeError as e:
            raise ReductionError(f"Velocity inner product is singular: {e}") from e

    @property
    def grid(self):
        return self.velocity_ip.grid

    def apply(self, mu: Parameter, pressure: Union[SpaceTimeField, np.ndarray]) -> SpaceTimeField:
        """T^µ·pressure for one space-time pressure field."""
        n_steps = self.grid.n_steps
        values = pressure.values if isinstance(pressure, SpaceTimeField) else np.asarray(pressure, dtype=float)
        values = values.reshape(n_steps, -1)
        if values.shape[1] != self.divergence.shape[0]:
            raise ReductionError(
                f"Pressure field has {values.shape[1]} dofs per step, divergence expects {self.divergence.shape[0]}"
            )
        rhs = np.asarray(self.divergence.evaluate(mu).T @ values.T)
        return SpaceTimeField(VariableRole.STATE, self._factor.solve(rhs).T)

    def snapshots(self, pressure_snaps: SnapshotSet, role: VariableRole = VariableRole.STATE) -> SnapshotSet:
        """Supremizers of every pressure snapshot, each at its own training parameter."""
        vectors = [
            self.apply(mu, pressure_snaps.matrix[:, m]).flatten()
            for m, mu in enumerate(pressure_snaps.parameters)
        ]
        logger.debug(f"Computed {len(vectors)} supremizers of {pressure_snaps.role.value} snapshots")
        return SnapshotSet.from_vectors(role, pressure_snaps.parameters, vectors)


def compute_supremizer(
    mu: Parameter,
    pressure_snapshot: Union[SpaceTimeField, np.ndarray],
    velocity_ip: InnerProduct,
    divergence: AffineOperator,
) -> SpaceTimeField:
    """One-off supremizer; builds and discards the factorization."""
    return SupremizerOperator(divergence, velocity_ip).apply(mu, pressure_snapshot)


def spacetime_divergence(divergence: AffineOperator, mu: Parameter, n_steps: int, dt: float) -> sp.csr_matrix:
    """I_{N_t} ⊗ Δt·D(µ)."""
    return sp.kron(sp.identity(n_steps, format="csr"), dt * divergence.evaluate(mu), format="csr")


def _orthonormal_factor(basis: np.ndarray, ip: InnerProduct) -> np.ndarray:
    gram = basis.T @ ip.apply(basis)
    try:
        return la.cholesky(0.5 * (gram + gram.T), lower=True)
    except la.LinAlgError as e:
        raise ReductionError(f"Basis is not linearly independent in the {ip.label} norm") from e


def reduced_inf_sup(
    mu: Parameter,
    divergence: AffineOperator,
    velocity_basis: np.ndarray,
    pressure_basis: np.ndarray,
    velocity_ip: InnerProduct,
    pressure_ip: InnerProduct,
) -> float:
    """
    inf_q sup_v b(v, q; µ) / (‖v‖_X ‖q‖_X) over the reduced spaces.

    Args:
        mu: Parameter
        divergence: b(v, q; µ) family on the spatial spaces
        velocity_basis: Space-time velocity basis, (N_t·𝒩_v, r_v)
        pressure_basis: Space-time pressure basis, (N_t·𝒩_p, r_p)
        velocity_ip: Velocity inner product
        pressure_ip: Pressure inner product

    Returns:
        Smallest singular value of the normalized reduced divergence block;
        0 when the pressure space is larger than the velocity space
    """
    grid = velocity_ip.grid
    if pressure_basis.shape[1] > velocity_basis.shape[1]:
        return 0.0
    operator = spacetime_divergence(divergence, mu, grid.n_steps, grid.dt)
    reduced = pressure_basis.T @ (operator @ velocity_basis)
    left = _orthonormal_factor(pressure_basis, pressure_ip)
    right = _orthonormal_factor(velocity_basis, velocity_ip)
    scaled = la.solve_triangular(left, reduced, lower=True)
    scaled = la.solve_triangular(right, scaled.T, lower=True).T
    return float(np.min(la.svdvals(scaled)))


def inf_sup_sweep(
    parameters: Sequence[Parameter],
    divergence: AffineOperator,
    velocity_basis: np.ndarray,
    pressure_basis: np.ndarray,
    velocity_ip: InnerProduct,
    pressure_ip: InnerProduct,
) -> np.ndarray:
    """reduced_inf_sup at every parameter."""
    return np.array(
        [
            reduced_inf_sup(mu, divergence, velocity_basis, pressure_basis, velocity_ip, pressure_ip)
            for mu in parameters
        ]
    )
