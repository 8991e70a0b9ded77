#!/usr/bin/env python3
"""
Basis Models

This module contains the snapshot set, space-time inner product and reduced
basis types used by the proper orthogonal decomposition.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..exceptions import PODError
from .fields import TimeGrid, VariableRole
from .parameter import Parameter


@dataclass(frozen=True, eq=False)
class SnapshotSet:
    """
    Space-time snapshots of one variable.

    Attributes:
        role: Variable role
        parameters: µ_1, …, µ_{N_max}
        matrix: (n_dofs, N_max) array, column m is the flattened field at µ_m
    """

    role: VariableRole
    parameters: Tuple[Parameter, ...]
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.ndim != 2:
            raise PODError(f"Snapshot matrix must be 2-D, got shape {self.matrix.shape}")
        if self.matrix.shape[1] != len(self.parameters):
            raise PODError(
                f"{self.role.value} snapshot count {self.matrix.shape[1]} does not match "
                f"parameter count {len(self.parameters)}"
            )

    @property
    def count(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def length(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def from_vectors(
        cls, role: VariableRole, parameters: Sequence[Parameter], vectors: Sequence[np.ndarray]
    ) -> "SnapshotSet":
        if not vectors:
            raise PODError(f"No {role.value} snapshots given")
        lengths = {np.asarray(v).size for v in vectors}
        if len(lengths) != 1:
            raise PODError(f"{role.value} snapshots have inconsistent lengths: {sorted(lengths)}")
        return cls(role, tuple(parameters), np.column_stack([np.asarray(v, dtype=float).ravel() for v in vectors]))


class InnerProduct:
    """
    Space-time inner product (a, b) = aᵀ X b with X = I_{N_t} ⊗ Δt·X_space.

    Attributes:
        label: Descriptor recorded in manifests, e.g. "h1" or "l2"
        spatial: Spatial gram matrix
        grid: Time grid
    """

    def __init__(self, spatial: sp.spmatrix, grid: TimeGrid, label: str = ""):
        self.spatial = sp.csr_matrix(spatial)
        self.grid = grid
        self.label = label
        self._gram = None

    @property
    def gram(self) -> sp.csr_matrix:
        if self._gram is None:
            self._gram = sp.kron(
                sp.identity(self.grid.n_steps, format="csr"), self.grid.dt * self.spatial, format="csr"
            )
        return self._gram

    @property
    def size(self) -> int:
        return self.grid.n_steps * self.spatial.shape[0]

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """X·v for a vector or for the columns of a matrix, without forming X."""
        vectors = np.asarray(vectors, dtype=float)
        n = self.spatial.shape[0]
        if vectors.ndim == 1:
            steps = vectors.reshape(self.grid.n_steps, n)
            return (self.grid.dt * (self.spatial @ steps.T).T).reshape(-1)
        width = vectors.shape[1]
        steps = vectors.reshape(self.grid.n_steps, n, width)
        out = np.empty_like(steps)
        for k in range(self.grid.n_steps):
            out[k] = self.spatial @ steps[k]
        return self.grid.dt * out.reshape(-1, width)

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.dot(np.asarray(a, dtype=float).ravel(), self.apply(np.asarray(b, dtype=float).ravel())))

    def norm(self, a: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(a, a), 0.0)))

    def is_positive_definite(self) -> bool:
        """Probe the spatial block with a diagonally pivoted LU factorization."""
        matrix = sp.csc_matrix(self.spatial)
        if abs(matrix - matrix.T).max() > 1e-12 * max(abs(matrix).max(), 1.0):
            return False
        try:
            lu = spla.splu(
                matrix,
                permc_spec="MMD_AT_PLUS_A",
                diag_pivot_thresh=0.0,
                options={"SymmetricMode": True},
            )
        except RuntimeError:
            return False
        return bool(np.all(lu.U.diagonal() > 0.0))


@dataclass(frozen=True, eq=False)
class ReducedBasis:
    """
    X-orthonormal reduced basis of one variable.

    Attributes:
        role: Variable role
        matrix: (n_dofs, N) basis vectors ξ_1, …, ξ_N as columns
        eigenvalues: λ_1 ≥ … ≥ λ_N of the retained modes
        spectrum: All nonnegative eigenvalues of the correlation matrix
        inner_product: Label of the inner product used
    """

    role: VariableRole
    matrix: np.ndarray
    eigenvalues: np.ndarray
    spectrum: np.ndarray
    inner_product: str = ""

    @property
    def size(self) -> int:
        return int(self.matrix.shape[1])

    def truncate(self, n: int) -> "ReducedBasis":
        if n < 1:
            raise PODError(f"Cannot truncate a basis to {n} vectors")
        n = min(n, self.size)
        return ReducedBasis(self.role, self.matrix[:, :n], self.eigenvalues[:n], self.spectrum, self.inner_product)

    def orthonormality_error(self, ip: InnerProduct) -> float:
        gram = self.matrix.T @ ip.apply(self.matrix)
        return float(np.max(np.abs(gram - np.eye(self.size)))) if self.size else 0.0

    def energy_fraction(self) -> float:
        total = float(np.sum(self.spectrum))
        return float(np.sum(self.eigenvalues)) / total if total > 0 else 1.0


