#!/usr/bin/env python3
"""
Relative errors between full-order and reduced solutions.
"""

import logging
from typing import Mapping, Optional, Tuple

import numpy as np

from ..exceptions import ReductionError
from ..models.basis import InnerProduct
from ..models.fields import SpaceTimeField, VariableRole
from ..models.rom import ErrorReport

logger = logging.getLogger(__name__)

# Roles compared after removing their spatial mean at every step.
MEAN_SHIFTED_ROLES = (VariableRole.ADJOINT_PRESSURE,)


def mean_shift(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Subtract ∫q / |Ω| from every step of a (N_t, 𝒩_p) pressure array."""
    weights = np.asarray(weights, dtype=float)
    total = float(weights.sum())
    if total == 0.0:
        raise ReductionError("Pressure mean weights sum to zero")
    values = np.asarray(values, dtype=float)
    return values - (values @ weights / total)[:, None]


def relative_error(reference: SpaceTimeField, approximation: SpaceTimeField, ip: InnerProduct) -> Tuple[float, bool]:
    """
    ‖reference − approximation‖_X / ‖reference‖_X.

    Returns:
        (error, absolute) where absolute is True when the reference norm vanished
    """
    if reference.values.shape != approximation.values.shape:
        raise ReductionError(
            f"Cannot compare {reference.role.value} fields of shapes "
            f"{reference.values.shape} and {approximation.values.shape}"
        )
    difference = ip.norm(reference.flatten() - approximation.flatten())
    norm = ip.norm(reference.flatten())
    if norm == 0.0:
        return difference, True
    return difference / norm, False


def error_report(
    fe_fields: Mapping[VariableRole, SpaceTimeField],
    rom_fields: Mapping[VariableRole, SpaceTimeField],
    inner_products: Mapping[VariableRole, InnerProduct],
    fe_objective: float,
    rom_objective: float,
    mean_weights: Optional[np.ndarray] = None,
) -> ErrorReport:
    """
    Per-role relative errors and the relative output error.

    Args:
        fe_fields: Full-order fields per role
        rom_fields: Lifted reduced fields per role
        inner_products: Inner product per role on the fields' spaces
        fe_objective: J_FE
        rom_objective: J_ROM
        mean_weights: ∫ψ_i per pressure dof; enables the adjoint pressure mean shift

    Returns:
        ErrorReport; roles with a vanishing reference report absolute errors

    Raises:
        ReductionError: If a role is missing or the grids differ
    """
    errors = {}
    absolute = []
    for role, reference in fe_fields.items():
        if role not in rom_fields:
            raise ReductionError(f"Reduced solution has no {role.value} field")
        if role not in inner_products:
            raise ReductionError(f"No inner product for the {role.value} field")
        approximation = rom_fields[role]
        if mean_weights is not None and role in MEAN_SHIFTED_ROLES:
            reference = SpaceTimeField(role, mean_shift(reference.values, mean_weights))
            approximation = SpaceTimeField(role, mean_shift(approximation.values, mean_weights))
        value, flagged = relative_error(reference, approximation, inner_products[role])
        errors[role.value] = value
        if flagged:
            absolute.append(role.value)

    output_error = abs(fe_objective - rom_objective)
    if fe_objective != 0.0:
        output_error /= abs(fe_objective)
    else:
        absolute.append("output")
    if absolute:
        logger.debug(f"Absolute errors reported for vanishing references: {', '.join(absolute)}")
    return ErrorReport(errors, float(output_error), tuple(absolute))


def mean_errors(reports) -> ErrorReport:
    """Average a sequence of reports role by role."""
    reports = list(reports)
    if not reports:
        raise ReductionError("No error reports to average")
    roles = reports[0].errors.keys()
    errors = {role: float(np.mean([report.errors[role] for report in reports])) for role in roles}
    absolute = tuple(sorted({flag for report in reports for flag in report.absolute}))
    return ErrorReport(errors, float(np.mean([report.output_error for report in reports])), absolute)
