"""
Finite element layer: structured meshes, affine subdomain maps, P1/P2
Lagrange spaces, quadrature and sparse assembly of the bilinear forms.
"""

from .assembly import (
    assemble_advection,
    assemble_boundary_mass,
    assemble_directional_stiffness,
    assemble_divergence,
    assemble_mass,
    assemble_stiffness,
    export_operator,
    is_symmetric,
)
from .geometry import deform_mesh, domain_area, subdomain_maps
from .lifting import dirichlet_dofs, dirichlet_lifting
from .mesh import build_structured_mesh, export_mesh
from .quadrature import QuadratureRule, interval_rule, triangle_rule
from .spaces import FunctionSpace

__all__ = [
    "build_structured_mesh",
    "export_mesh",
    "subdomain_maps",
    "deform_mesh",
    "domain_area",
    "QuadratureRule",
    "triangle_rule",
    "interval_rule",
    "FunctionSpace",
    "assemble_mass",
    "assemble_stiffness",
    "assemble_directional_stiffness",
    "assemble_advection",
    "assemble_divergence",
    "assemble_boundary_mass",
    "is_symmetric",
    "export_operator",
    "dirichlet_dofs",
    "dirichlet_lifting",
]
