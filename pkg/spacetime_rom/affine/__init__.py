"""
Affine parameter decompositions Σ θ_q(µ)·A_q of the benchmark operators
and of the space-time KKT system built from them.
"""

from .graetz import graetz_affine_decomposition
from .kkt import AffineKKT, build_affine_kkt
from .operators import AffineOperator, AffineVector, CaseOperators, constant_vector, quadratic_form, zero_vector
from .stokes import stokes_affine_decomposition, stokes_step_layout
from .theta import Theta, evaluate_thetas

__all__ = [
    "Theta",
    "evaluate_thetas",
    "AffineOperator",
    "AffineVector",
    "CaseOperators",
    "constant_vector",
    "zero_vector",
    "quadratic_form",
    "graetz_affine_decomposition",
    "stokes_affine_decomposition",
    "stokes_step_layout",
    "AffineKKT",
    "build_affine_kkt",
]
