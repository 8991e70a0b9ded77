#!/usr/bin/env python3
"""
Finite element assembly on the reference mesh.

Local element matrices are computed for all cells of a subdomain at once
with numpy broadcasting and scattered into scipy.sparse matrices; duplicate
(row, col) entries are summed on conversion to CSR. Vector-valued operators
are built from the scalar ones as I₂ ⊗ K, matching the blocked component
numbering of FunctionSpace.
"""

import logging
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..constants import SYMMETRY_TOLERANCE
from ..exceptions import AssemblyError, MeshError
from ..models.mesh import SubdomainSelector
from .elements import edge_shape_values, shape_gradients, shape_values
from .quadrature import interval_rule, triangle_rule
from .spaces import FunctionSpace

logger = logging.getLogger(__name__)

VelocityField = Callable[[np.ndarray], np.ndarray]


def _cells(space: FunctionSpace, subdomain: SubdomainSelector) -> np.ndarray:
    try:
        return space.mesh.cells_in(subdomain)
    except MeshError as e:
        raise AssemblyError(str(e)) from e


def _geometry(space: FunctionSpace, cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Origins (e,2), Jacobians B (e,2,2), |det B| (e,), B⁻¹ (e,2,2)."""
    v = space.mesh.vertices[space.mesh.triangles[cells]]
    jac = np.stack([v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]], axis=2)
    det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
    return v[:, 0], jac, np.abs(det), np.linalg.inv(jac)


def _scatter(local: np.ndarray, row_dofs: np.ndarray, col_dofs: np.ndarray, shape: Tuple[int, int]) -> sp.csr_matrix:
    n_rows, n_cols = local.shape[1], local.shape[2]
    rows = np.repeat(row_dofs[:, :, None], n_cols, axis=2)
    cols = np.repeat(col_dofs[:, None, :], n_rows, axis=1)
    matrix = sp.coo_matrix((local.ravel(), (rows.ravel(), cols.ravel())), shape=shape).tocsr()
    matrix.sum_duplicates()
    return matrix


def _vectorize(space: FunctionSpace, scalar: sp.csr_matrix) -> sp.csr_matrix:
    if space.components == 1:
        return scalar
    return sp.kron(sp.identity(space.components, format="csr"), scalar, format="csr")


def _physical_gradients(order: int, points: np.ndarray, jac_inv: np.ndarray) -> np.ndarray:
    """(e, q, n_local, 2) physical gradients B⁻ᵀ∇̂φ."""
    return np.einsum("qia,eab->eqib", shape_gradients(order, points), jac_inv)


def _quadrature_points(origin: np.ndarray, jac: np.ndarray, points: np.ndarray) -> np.ndarray:
    return origin[:, None, :] + np.einsum("eab,qb->eqa", jac, points)


def assemble_mass(space: FunctionSpace, subdomain: SubdomainSelector = None) -> sp.csr_matrix:
    """
    Mass matrix M_ij = ∫ φ_i φ_j over a subdomain (or the whole mesh).

    Raises:
        AssemblyError: If the subdomain tag is unknown
    """
    cells = _cells(space, subdomain)
    rule = triangle_rule(2 * space.order)
    _, _, det, _ = _geometry(space, cells)
    phi = shape_values(space.order, rule.points)
    reference = np.einsum("q,qi,qj->ij", rule.weights, phi, phi)
    local = det[:, None, None] * reference[None]
    dofs = space.cell_dofs[cells]
    scalar = _scatter(local, dofs, dofs, (space.n_scalar, space.n_scalar))
    return _vectorize(space, scalar)


def _check_metric(metric: np.ndarray) -> np.ndarray:
    metric = np.asarray(metric, dtype=float)
    if metric.shape != (2, 2):
        raise AssemblyError(f"Diffusion metric must be 2×2, got shape {metric.shape}")
    if np.max(np.abs(metric - metric.T)) > SYMMETRY_TOLERANCE * max(1.0, np.max(np.abs(metric))):
        raise AssemblyError(f"Diffusion metric is not symmetric: {metric.tolist()}")
    if np.min(np.linalg.eigvalsh(metric)) <= 0.0:
        raise AssemblyError(f"Diffusion metric is not positive definite: {metric.tolist()}")
    return metric


def _gradient_form(space: FunctionSpace, cells: np.ndarray, metric: np.ndarray) -> sp.csr_matrix:
    rule = triangle_rule(max(2 * (space.order - 1), 2))
    _, _, det, jac_inv = _geometry(space, cells)
    grads = _physical_gradients(space.order, rule.points, jac_inv)
    local = np.einsum("e,q,eqjb,ab,eqia->eij", det, rule.weights, grads, metric, grads)
    dofs = space.cell_dofs[cells]
    scalar = _scatter(local, dofs, dofs, (space.n_scalar, space.n_scalar))
    return _vectorize(space, scalar)


def assemble_stiffness(
    space: FunctionSpace,
    subdomain: SubdomainSelector = None,
    metric: Optional[np.ndarray] = None,
) -> sp.csr_matrix:
    """
    Stiffness matrix K_ij = ∫ (G∇φ_j)·∇φ_i with a constant SPD metric G.

    Args:
        space: Function space
        subdomain: Subdomain tag(s), None for the whole mesh
        metric: 2×2 SPD matrix, identity by default

    Raises:
        AssemblyError: If the metric is not SPD or the tag is unknown
    """
    metric = np.eye(2) if metric is None else _check_metric(metric)
    return _gradient_form(space, _cells(space, subdomain), metric)


def assemble_directional_stiffness(
    space: FunctionSpace, axis: int, subdomain: SubdomainSelector = None
) -> sp.csr_matrix:
    """∫ ∂_a φ_j ∂_a φ_i for a = axis; the xx / yy parts of an anisotropic split."""
    if axis not in (0, 1):
        raise AssemblyError(f"Axis must be 0 or 1, got {axis}")
    metric = np.zeros((2, 2))
    metric[axis, axis] = 1.0
    return _gradient_form(space, _cells(space, subdomain), metric)


def assemble_advection(
    space: FunctionSpace,
    velocity_field: VelocityField,
    subdomain: SubdomainSelector = None,
) -> sp.csr_matrix:
    """
    Advection matrix A_ij = ∫ (b·∇φ_j) φ_i.

    Args:
        space: Scalar function space
        velocity_field: Maps (n, 2) points to (n, 2) velocities
        subdomain: Subdomain tag(s)
    """
    if space.components != 1:
        raise AssemblyError("Advection is assembled on scalar spaces only")
    cells = _cells(space, subdomain)
    rule = triangle_rule(4)
    origin, jac, det, jac_inv = _geometry(space, cells)
    points = _quadrature_points(origin, jac, rule.points)
    velocity = np.asarray(velocity_field(points.reshape(-1, 2)), dtype=float).reshape(points.shape)
    grads = _physical_gradients(space.order, rule.points, jac_inv)
    phi = shape_values(space.order, rule.points)
    local = np.einsum("e,q,eqa,eqja,qi->eij", det, rule.weights, velocity, grads, phi)
    dofs = space.cell_dofs[cells]
    return _scatter(local, dofs, dofs, (space.n_scalar, space.n_scalar))


def assemble_divergence(
    velocity_space: FunctionSpace,
    pressure_space: FunctionSpace,
    axis: Optional[int] = None,
) -> sp.csr_matrix:
    """
    Divergence matrix D_ij = −∫ ψ_i div(Φ_j), shape (𝒩_p, 𝒩_y).

    Args:
        velocity_space: Vector space
        pressure_space: Scalar space on the same mesh
        axis: Restrict to the ∂_axis Φ_axis contribution (0 or 1); None for the full divergence

    Raises:
        AssemblyError: If the spaces live on different meshes or have the wrong kind
    """
    if velocity_space.mesh is not pressure_space.mesh:
        raise AssemblyError("Velocity and pressure spaces are defined on different meshes")
    if velocity_space.components != 2 or pressure_space.components != 1:
        raise AssemblyError("Divergence needs a vector velocity space and a scalar pressure space")
    axes = (0, 1) if axis is None else (axis,)
    cells = np.arange(velocity_space.mesh.n_triangles)
    rule = triangle_rule(4)
    _, _, det, jac_inv = _geometry(velocity_space, cells)
    grads = _physical_gradients(velocity_space.order, rule.points, jac_inv)
    psi = shape_values(pressure_space.order, rule.points)
    rows = pressure_space.cell_dofs
    shape = (pressure_space.n_scalar, velocity_space.n_scalar)
    blocks = []
    for component in (0, 1):
        if component in axes:
            local = -np.einsum("e,q,qi,eqj->eij", det, rule.weights, psi, grads[..., component])
            blocks.append(_scatter(local, rows, velocity_space.cell_dofs, shape))
        else:
            blocks.append(sp.csr_matrix(shape))
    return sp.hstack(blocks, format="csr")


def assemble_boundary_mass(space: FunctionSpace, boundary_tag: str) -> sp.csr_matrix:
    """
    Boundary mass (M_Γ)_ij = ∫_Γ φ_i φ_j over the edges carrying a tag.

    A declared tag without edges yields the zero matrix.

    Raises:
        AssemblyError: If the tag is not declared for the mesh
    """
    try:
        edge_dofs = space.edge_dofs(boundary_tag)
    except MeshError as e:
        raise AssemblyError(str(e)) from e
    n = space.n_scalar
    if edge_dofs.shape[0] == 0:
        return _vectorize(space, sp.csr_matrix((n, n)))
    rule = interval_rule(3)
    phi = edge_shape_values(space.order, rule.points)
    reference = np.einsum("q,qi,qj->ij", rule.weights, phi, phi)
    vertices = space.mesh.vertices
    d = vertices[edge_dofs[:, 1]] - vertices[edge_dofs[:, 0]]
    lengths = np.hypot(d[:, 0], d[:, 1])
    local = lengths[:, None, None] * reference[None]
    scalar = _scatter(local, edge_dofs, edge_dofs, (n, n))
    return _vectorize(space, scalar)


def is_symmetric(matrix: sp.spmatrix, tol: float = SYMMETRY_TOLERANCE) -> bool:
    """‖M − Mᵀ‖_max < tol."""
    diff = sp.csr_matrix(matrix - matrix.T)
    return diff.nnz == 0 or float(np.max(np.abs(diff.data))) < tol


def export_operator(matrix: sp.spmatrix, path: Union[str, Path]) -> Path:
    """Write a sparse operator as "row col value" text lines preceded by a shape header."""
    path = Path(path)
    coo = sp.coo_matrix(matrix)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# shape {coo.shape[0]} {coo.shape[1]} nnz {coo.nnz}\n")
        for r, c, v in zip(coo.row, coo.col, coo.data):
            f.write(f"{r} {c} {float(v)!r}\n")
    logger.debug(f"Exported {coo.shape} operator with {coo.nnz} entries to {path}")
    return path
