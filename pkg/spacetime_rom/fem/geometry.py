#!/usr/bin/env python3
"""
Affine subdomain maps of the geometric parametrization.

All assembly happens on the reference mesh; the maps only supply the
subdomain-wise constant Jacobians. deform_mesh builds the physical mesh and
is used for export and as an independent assembly oracle.
"""

from typing import List, Optional, Union

import numpy as np

from ..models.case import CaseId, case_parameter_box
from ..models.mesh import GeometricMap, Mesh
from ..models.parameter import Parameter, ParameterBox
from .mesh import GRAETZ_CHANNEL_END


def subdomain_maps(
    case_id: Union[CaseId, str],
    mu: Parameter,
    box: Optional[ParameterBox] = None,
) -> List[GeometricMap]:
    """
    Geometric maps per subdomain for a parameter.

    Graetz: identity on Ω₁, x ↦ 1 + µ_geo(x − 1) on Ω₂ and Ω₃.
    Stokes cavity: x ↦ µ_geo·x on the whole square.

    Args:
        case_id: Benchmark identifier
        mu: Parameter point
        box: Parameter box to validate against (defaults to the case box)

    Raises:
        ParameterError: If mu lies outside the box
    """
    case = CaseId.parse(case_id)
    (box or case_parameter_box(case)).validate(mu)
    stretch = mu["mu_geo"]
    scale = np.diag([stretch, 1.0])
    if case is CaseId.GRAETZ:
        identity = GeometricMap(1, np.eye(2), np.zeros(2))
        shift = np.array([GRAETZ_CHANNEL_END * (1.0 - stretch), 0.0])
        return [identity, GeometricMap(2, scale, shift), GeometricMap(3, scale, shift.copy())]
    return [GeometricMap(1, scale, np.zeros(2))]


def _map_for(maps: List[GeometricMap], subdomain_id: int) -> GeometricMap:
    for geometric_map in maps:
        if geometric_map.subdomain_id == subdomain_id:
            return geometric_map
    raise KeyError(subdomain_id)


def deform_mesh(mesh: Mesh, maps: List[GeometricMap]) -> Mesh:
    """Physical mesh: every triangle mapped by the map of its subdomain."""
    vertices = mesh.vertices.copy()
    for subdomain_id in np.unique(mesh.subdomain_ids):
        cells = np.flatnonzero(mesh.subdomain_ids == subdomain_id)
        nodes = np.unique(mesh.triangles[cells])
        vertices[nodes] = _map_for(maps, int(subdomain_id)).apply(mesh.vertices[nodes])
    return mesh.with_vertices(vertices)


def domain_area(mesh: Mesh, maps: List[GeometricMap]) -> float:
    """Σ_subdomains jacobian_det · reference area."""
    areas = mesh.signed_areas()
    total = 0.0
    for subdomain_id in np.unique(mesh.subdomain_ids):
        det = _map_for(maps, int(subdomain_id)).jacobian_det
        total += det * float(np.sum(areas[mesh.subdomain_ids == subdomain_id]))
    return total
