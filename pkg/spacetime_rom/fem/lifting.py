#!/usr/bin/env python3
"""
Dirichlet lifting.

The lift interpolates the boundary data at the constrained dofs and is zero
elsewhere; the solvers work with the homogeneous remainder on the free dofs.
"""

import logging
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import AssemblyError, MeshError
from .spaces import FunctionSpace

logger = logging.getLogger(__name__)

BoundaryValue = Union[float, Sequence[float], Callable[[np.ndarray], np.ndarray]]


def _values_at(space: FunctionSpace, value: BoundaryValue, scalar_dofs: np.ndarray) -> np.ndarray:
    """(n, components) boundary data at scalar dofs."""
    points = space.dof_coordinates[scalar_dofs]
    if callable(value):
        data = np.asarray(value(points), dtype=float)
    else:
        data = np.broadcast_to(np.asarray(value, dtype=float), (len(scalar_dofs),) + np.shape(value))
    return np.asarray(data, dtype=float).reshape(len(scalar_dofs), space.components)


def dirichlet_dofs(space: FunctionSpace, tags: Sequence[str]) -> np.ndarray:
    """Sorted union of the dofs on the given tags (all components)."""
    if not tags:
        return np.zeros(0, dtype=np.int64)
    try:
        return np.unique(np.concatenate([space.boundary_dofs(tag) for tag in tags]))
    except MeshError as e:
        raise AssemblyError(str(e)) from e


def dirichlet_lifting(
    space: FunctionSpace,
    boundary_values: Mapping[str, BoundaryValue],
    priority: Optional[Sequence[str]] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Interpolate Dirichlet data and compute the free dofs.

    Args:
        space: Function space
        boundary_values: Tag → constant, per-component constants, or a
            callable of the (n, 2) dof coordinates
        priority: Tags ordered from highest to lowest priority; decides the
            value at dofs shared by several tags

    Returns:
        (lift_vector, free_dofs)

    Raises:
        AssemblyError: If a tag is unknown, or two tags prescribe different
            values at a shared dof and no priority order covers them
    """
    tags = list(boundary_values.keys())
    if priority is not None:
        missing = [tag for tag in tags if tag not in priority]
        if missing:
            raise AssemblyError(f"Dirichlet tags missing from the priority order: {', '.join(missing)}")
        ordered = [tag for tag in priority if tag in boundary_values]
    else:
        ordered = tags

    lift = np.zeros(space.dimension)
    owner: Dict[int, str] = {}
    for tag in ordered:
        try:
            scalar = np.unique(space.edge_dofs(tag).ravel())
        except MeshError as e:
            raise AssemblyError(str(e)) from e
        if scalar.size == 0:
            continue
        values = _values_at(space, boundary_values[tag], scalar)
        for c in range(space.components):
            dofs = scalar + c * space.n_scalar
            for dof, v in zip(dofs, values[:, c]):
                dof = int(dof)
                if dof in owner:
                    if priority is None and abs(lift[dof] - v) > 1e-14:
                        raise AssemblyError(
                            f"Conflicting Dirichlet values at dof {dof} shared by tags "
                            f"'{owner[dof]}' and '{tag}' with no priority order"
                        )
                    continue
                owner[dof] = tag
                lift[dof] = v

    constrained = np.array(sorted(owner), dtype=np.int64)
    free = np.setdiff1d(np.arange(space.dimension), constrained)
    logger.debug(f"Dirichlet lifting: {constrained.size} constrained, {free.size} free dofs")
    return lift, free
