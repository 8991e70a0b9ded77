#!/usr/bin/env python3
"""
Lagrange finite element spaces on a structured mesh.

Scalar dofs are numbered vertices first, then (for P2) the unique mesh
edges in lexicographic order of their sorted vertex pairs. Vector spaces
block their components: dof c·n_scalar + i is component c of scalar dof i.
"""

from functools import cached_property
from typing import Callable, Dict, Union

import numpy as np

from ..exceptions import AssemblyError
from ..models.mesh import Mesh
from .elements import LOCAL_EDGES, local_dof_count


class FunctionSpace:
    """
    P1 or P2 Lagrange space, scalar or two-component vector.

    Args:
        mesh: Reference mesh
        order: Element order, 1 or 2
        components: 1 (scalar) or 2 (vector)

    Raises:
        AssemblyError: For unsupported orders or component counts
    """

    def __init__(self, mesh: Mesh, order: int = 1, components: int = 1):
        local_dof_count(order)
        if components not in (1, 2):
            raise AssemblyError(f"Unsupported component count {components} (expected 1 or 2)")
        self.mesh = mesh
        self.order = order
        self.components = components

        if order == 1:
            self.edges = np.zeros((0, 2), dtype=np.int64)
            self.cell_dofs = mesh.triangles.copy()
        else:
            local = np.concatenate(
                [np.sort(mesh.triangles[:, list(pair)], axis=1)[:, None, :] for pair in LOCAL_EDGES],
                axis=1,
            )
            edges, inverse = np.unique(local.reshape(-1, 2), axis=0, return_inverse=True)
            self.edges = edges
            edge_ids = np.asarray(inverse).reshape(-1, 3)
            self.cell_dofs = np.hstack([mesh.triangles, mesh.n_vertices + edge_ids])
        self.n_scalar = mesh.n_vertices + self.edges.shape[0]

    def __repr__(self) -> str:
        kind = "vector" if self.components == 2 else "scalar"
        return f"FunctionSpace(P{self.order} {kind}, dim={self.dimension})"

    @property
    def dimension(self) -> int:
        return self.components * self.n_scalar

    @property
    def dof_map(self) -> np.ndarray:
        """(n_triangles, components·n_local) global dofs per cell."""
        return np.hstack([self.cell_dofs + c * self.n_scalar for c in range(self.components)])

    @cached_property
    def dof_coordinates(self) -> np.ndarray:
        """(n_scalar, 2) coordinates of the scalar dofs."""
        vertices = self.mesh.vertices
        if self.order == 1:
            return vertices.copy()
        midpoints = 0.5 * (vertices[self.edges[:, 0]] + vertices[self.edges[:, 1]])
        return np.vstack([vertices, midpoints])

    @cached_property
    def _edge_lookup(self) -> Dict[tuple, int]:
        return {(int(a), int(b)): i for i, (a, b) in enumerate(self.edges)}

    def scalar_space(self) -> "FunctionSpace":
        return self if self.components == 1 else FunctionSpace(self.mesh, self.order, 1)

    def expand_components(self, scalar_dofs: np.ndarray) -> np.ndarray:
        """All component dofs of the given scalar dofs, component-major."""
        scalar_dofs = np.asarray(scalar_dofs, dtype=np.int64)
        return np.concatenate([scalar_dofs + c * self.n_scalar for c in range(self.components)])

    def edge_dofs(self, tag: str) -> np.ndarray:
        """
        Scalar dofs along each edge carrying a boundary tag.

        Returns:
            (n_edges, 2) for P1 or (n_edges, 3) for P2: start, end[, midpoint]
        """
        edges = self.mesh.edges_with_tag(tag)
        if self.order == 1:
            return edges.copy()
        mids = [
            self.mesh.n_vertices + self._edge_lookup[(int(min(a, b)), int(max(a, b)))] for a, b in edges
        ]
        return np.column_stack([edges, np.asarray(mids, dtype=np.int64)]) if len(mids) else np.zeros((0, 3), dtype=np.int64)

    def boundary_dofs(self, tag: str) -> np.ndarray:
        """Sorted global dofs (all components) on a boundary tag."""
        scalar = np.unique(self.edge_dofs(tag).ravel())
        return np.sort(self.expand_components(scalar))

    @property
    def dirichlet_dofs(self) -> Dict[str, np.ndarray]:
        """Global dofs per declared boundary tag."""
        return {tag: self.boundary_dofs(tag) for tag in self.mesh.declared_tags}

    def interpolate(self, function: Union[Callable[[np.ndarray], np.ndarray], float]) -> np.ndarray:
        """
        Nodal interpolant of a function of the coordinates.

        Args:
            function: Callable mapping (n, 2) points to (n,) values (scalar)
                or (n, 2) values (vector), or a constant
        """
        points = self.dof_coordinates
        if callable(function):
            values = np.asarray(function(points), dtype=float)
        else:
            values = np.broadcast_to(np.asarray(function, dtype=float), (points.shape[0],) + np.shape(function)).copy()
        if self.components == 1:
            return values.reshape(self.n_scalar)
        values = values.reshape(self.n_scalar, self.components)
        return values.T.reshape(-1)
