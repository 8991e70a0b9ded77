#!/usr/bin/env python3
"""
Mesh Models

This module contains the triangulation and geometric map types. Both are
immutable after construction and safe to share across threads.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple, Union

import numpy as np

from ..constants import MAP_INVERSE_TOLERANCE
from ..exceptions import MeshError
from .case import CaseId

SubdomainSelector = Optional[Union[str, Iterable[str]]]


@dataclass(frozen=True, eq=False)
class Mesh:
    """
    Structured triangulation of a reference domain.

    Attributes:
        case_id: Benchmark the mesh was built for
        vertices: (n_vertices, 2) coordinates in reference units
        triangles: (n_triangles, 3) counter-clockwise vertex indices
        boundary_edges: (n_edges, 2) vertex index pairs on the boundary
        boundary_tags: Tag name per boundary edge
        subdomain_ids: Subdomain id per triangle
        subdomain_names: Subdomain id to tag name
        declared_tags: Boundary tags of the case, including tags with no edges
        shape: (nx, ny) cell counts of the structured grid
    """

    case_id: CaseId
    vertices: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray
    boundary_tags: Tuple[str, ...]
    subdomain_ids: np.ndarray
    subdomain_names: Dict[int, str]
    declared_tags: Tuple[str, ...]
    shape: Tuple[int, int] = (0, 0)

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    def signed_areas(self) -> np.ndarray:
        v = self.vertices[self.triangles]
        e1 = v[:, 1] - v[:, 0]
        e2 = v[:, 2] - v[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def subdomain_id(self, name: str) -> int:
        for sid, sname in self.subdomain_names.items():
            if sname == name:
                return sid
        raise MeshError(
            f"Unknown subdomain tag '{name}' (known: {', '.join(self.subdomain_names.values())})"
        )

    def cells_in(self, subdomain: SubdomainSelector = None) -> np.ndarray:
        """
        Indices of the triangles in a subdomain or a union of subdomains.

        Args:
            subdomain: None for all triangles, a tag name, or an iterable of tag names

        Raises:
            MeshError: If a tag is unknown
        """
        if subdomain is None:
            return np.arange(self.n_triangles)
        names = [subdomain] if isinstance(subdomain, str) else list(subdomain)
        ids = [self.subdomain_id(name) for name in names]
        return np.flatnonzero(np.isin(self.subdomain_ids, ids))

    def edges_with_tag(self, tag: str) -> np.ndarray:
        """
        Boundary edges carrying a tag.

        Raises:
            MeshError: If the tag is not declared for this case
        """
        if tag not in self.declared_tags:
            raise MeshError(
                f"Unknown boundary tag '{tag}' (declared: {', '.join(self.declared_tags)})"
            )
        mask = np.array([t == tag for t in self.boundary_tags], dtype=bool)
        return self.boundary_edges[mask] if mask.size else np.zeros((0, 2), dtype=int)

    def tag_length(self, tag: str) -> float:
        edges = self.edges_with_tag(tag)
        if edges.size == 0:
            return 0.0
        d = self.vertices[edges[:, 1]] - self.vertices[edges[:, 0]]
        return float(np.sum(np.hypot(d[:, 0], d[:, 1])))

    def subdomain_area(self, subdomain: SubdomainSelector = None) -> float:
        return float(np.sum(self.signed_areas()[self.cells_in(subdomain)]))

    def with_vertices(self, vertices: np.ndarray) -> "Mesh":
        """Same topology and tags on new vertex coordinates."""
        return Mesh(
            case_id=self.case_id,
            vertices=np.asarray(vertices, dtype=float),
            triangles=self.triangles,
            boundary_edges=self.boundary_edges,
            boundary_tags=self.boundary_tags,
            subdomain_ids=self.subdomain_ids,
            subdomain_names=self.subdomain_names,
            declared_tags=self.declared_tags,
            shape=self.shape,
        )


@dataclass(frozen=True)
class GeometricMap:
    """
    Affine map from a reference subdomain to its physical counterpart.

    x_physical = linear_part @ x_reference + offset

    Attributes:
        subdomain_id: Subdomain the map applies to
        linear_part: 2×2 matrix
        offset: 2-vector
    """

    subdomain_id: int
    linear_part: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        if self.jacobian_det <= 0.0:
            raise MeshError(
                f"Geometric map on subdomain {self.subdomain_id} is not orientation preserving "
                f"(det={self.jacobian_det!r})"
            )

    @property
    def jacobian_det(self) -> float:
        a = self.linear_part
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])

    @property
    def inverse_linear_part(self) -> np.ndarray:
        return np.linalg.inv(self.linear_part)

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.linear_part.T + self.offset

    def inverse(self, points: np.ndarray) -> np.ndarray:
        return (np.asarray(points, dtype=float) - self.offset) @ self.inverse_linear_part.T

    def diffusion_metric(self) -> np.ndarray:
        """Pulled-back diffusion tensor J⁻¹J⁻ᵀ·det J."""
        jinv = self.inverse_linear_part
        return jinv @ jinv.T * self.jacobian_det

    def is_identity(self, tol: float = MAP_INVERSE_TOLERANCE) -> bool:
        return bool(
            np.allclose(self.linear_part, np.eye(2), atol=tol, rtol=0.0)
            and np.allclose(self.offset, 0.0, atol=tol, rtol=0.0)
        )
