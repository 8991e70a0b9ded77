#!/usr/bin/env python3
"""
Aggregated reduced spaces.

State and adjoint share one reduced space so the reduced saddle point
system keeps its inf-sup stability. For Stokes the velocity block is
further enriched by the supremizers of both pressures.
"""

import logging
from typing import Mapping, Tuple

import numpy as np

from ..constants import GRAM_SCHMIDT_DROP_TOLERANCE
from ..exceptions import ReductionError
from ..models.basis import InnerProduct, ReducedBasis
from ..models.fields import VariableRole
from ..models.rom import PARABOLIC, STOKES, AggregatedSpace, BasisSet

logger = logging.getLogger(__name__)

_MULTIPLIERS = {PARABOLIC: 5, STOKES: 13}


def orthonormalize(
    vectors: np.ndarray, ip: InnerProduct, tol: float = GRAM_SCHMIDT_DROP_TOLERANCE
) -> Tuple[np.ndarray, int]:
    """
    Modified Gram–Schmidt in the X-norm with one re-orthogonalization pass.

    A column whose remainder falls below tol times its incoming norm is
    dropped.

    Args:
        vectors: (n, r) columns to orthonormalize, in order
        ip: Inner product defining X
        tol: Relative drop tolerance

    Returns:
        (X-orthonormal (n, k) columns, number of dropped columns)
    """
    vectors = np.asarray(vectors, dtype=float)
    kept = []
    images = []
    dropped = 0
    for column in vectors.T:
        incoming = ip.norm(column)
        if incoming == 0.0:
            dropped += 1
            continue
        w = column.copy()
        for _ in range(2):
            for q, xq in zip(kept, images):
                w -= q * float(xq @ w)
        xw = ip.apply(w)
        remainder = float(np.sqrt(max(w @ xw, 0.0)))
        if remainder < tol * incoming:
            dropped += 1
            continue
        kept.append(w / remainder)
        images.append(xw / remainder)
    if not kept:
        return np.zeros((vectors.shape[0], 0)), dropped
    return np.column_stack(kept), dropped


def _require(bases: Mapping[str, ReducedBasis]) -> None:
    for name, basis in bases.items():
        if basis.size == 0:
            raise ReductionError(f"Cannot aggregate an empty {name} basis")
    sizes = {basis.size for basis in bases.values()}
    if len(sizes) > 1:
        detail = ", ".join(f"{name}={basis.size}" for name, basis in bases.items())
        logger.warning(f"Aggregating bases of unequal size ({detail})")


def _block(name: str, parts, ip: InnerProduct, deficiency: dict) -> np.ndarray:
    stacked = np.hstack([np.asarray(part, dtype=float) for part in parts])
    matrix, dropped = orthonormalize(stacked, ip)
    if dropped:
        logger.warning(
            f"Aggregated {name} block lost {dropped} of {stacked.shape[1]} directions to near-dependence"
        )
    deficiency[name] = dropped
    return matrix


def aggregate_parabolic(
    state_basis: ReducedBasis,
    adjoint_basis: ReducedBasis,
    control_basis: ReducedBasis,
    inner_products: Mapping[VariableRole, InnerProduct],
) -> AggregatedSpace:
    """
    Z_N = span{state, adjoint} plus the control basis.

    Raises:
        ReductionError: If any basis is empty
    """
    _require({"state": state_basis, "adjoint": adjoint_basis, "control": control_basis})
    deficiency: dict = {}
    shared = _block("state", [state_basis.matrix, adjoint_basis.matrix], inner_products[VariableRole.STATE], deficiency)
    control = _block("control", [control_basis.matrix], inner_products[VariableRole.CONTROL], deficiency)
    space = AggregatedSpace(PARABOLIC, state_basis.size, {"state": shared}, control, deficiency)
    logger.info(
        f"Aggregated parabolic space: Z_N {shared.shape[1]}, control {control.shape[1]}, N_tot {space.n_tot}"
    )
    return space


def aggregate_stokes(
    velocity_basis: ReducedBasis,
    adjoint_velocity_basis: ReducedBasis,
    pressure_basis: ReducedBasis,
    adjoint_pressure_basis: ReducedBasis,
    control_basis: ReducedBasis,
    supremizer_basis: ReducedBasis,
    adjoint_supremizer_basis: ReducedBasis,
    inner_products: Mapping[VariableRole, InnerProduct],
) -> AggregatedSpace:
    """
    Velocity span{y, T p, λ, T ξ}, pressure span{p, ξ} and control.

    Raises:
        ReductionError: If any basis is empty
    """
    _require(
        {
            "velocity": velocity_basis,
            "adjoint velocity": adjoint_velocity_basis,
            "pressure": pressure_basis,
            "adjoint pressure": adjoint_pressure_basis,
            "control": control_basis,
            "supremizer": supremizer_basis,
            "adjoint supremizer": adjoint_supremizer_basis,
        }
    )
    deficiency: dict = {}
    velocity = _block(
        "state",
        [
            velocity_basis.matrix,
            supremizer_basis.matrix,
            adjoint_velocity_basis.matrix,
            adjoint_supremizer_basis.matrix,
        ],
        inner_products[VariableRole.STATE],
        deficiency,
    )
    pressure = _block(
        "pressure",
        [pressure_basis.matrix, adjoint_pressure_basis.matrix],
        inner_products[VariableRole.PRESSURE],
        deficiency,
    )
    control = _block("control", [control_basis.matrix], inner_products[VariableRole.CONTROL], deficiency)
    space = AggregatedSpace(
        STOKES, velocity_basis.size, {"state": velocity, "pressure": pressure}, control, deficiency
    )
    logger.info(
        f"Aggregated Stokes space: velocity {velocity.shape[1]}, pressure {pressure.shape[1]}, "
        f"control {control.shape[1]}, N_tot {space.n_tot}"
    )
    return space


def aggregate(basis_set: BasisSet, inner_products: Mapping[VariableRole, InnerProduct]) -> AggregatedSpace:
    """Aggregate a BasisSet according to its kind."""
    if basis_set.kind == PARABOLIC:
        return aggregate_parabolic(
            basis_set["state"], basis_set["adjoint"], basis_set["control"], inner_products
        )
    if basis_set.kind == STOKES:
        return aggregate_stokes(
            basis_set["state"],
            basis_set["adjoint"],
            basis_set["pressure"],
            basis_set["adjoint_pressure"],
            basis_set["control"],
            basis_set["supremizer"],
            basis_set["adjoint_supremizer"],
            inner_products,
        )
    raise ReductionError(f"Unknown basis set kind '{basis_set.kind}'")


def state_only_space(basis_set: BasisSet, inner_products: Mapping[VariableRole, InnerProduct]) -> AggregatedSpace:
    """Space built from the state snapshots alone, for the aggregation diagnostic."""
    deficiency: dict = {}
    blocks = {"state": _block("state", [basis_set["state"].matrix], inner_products[VariableRole.STATE], deficiency)}
    if basis_set.kind == STOKES:
        blocks["pressure"] = _block(
            "pressure", [basis_set["pressure"].matrix], inner_products[VariableRole.PRESSURE], deficiency
        )
    control = _block("control", [basis_set["control"].matrix], inner_products[VariableRole.CONTROL], deficiency)
    return AggregatedSpace(basis_set.kind, basis_set["state"].size, blocks, control, deficiency)


def reduced_dimension(kind: str, n: int) -> int:
    """N_tot = 5N (parabolic) or 13N (Stokes)."""
    if kind not in _MULTIPLIERS:
        raise ReductionError(f"Unknown reduced space kind '{kind}'")
    return _MULTIPLIERS[kind] * n


def full_order_dimension(n_steps: int, state_dofs: int, control_dofs: int, pressure_dofs: int = 0) -> int:
    """N_t·(2·(𝒩_y + 𝒩_p) + 𝒩_u)."""
    return n_steps * (2 * (state_dofs + pressure_dofs) + control_dofs)
