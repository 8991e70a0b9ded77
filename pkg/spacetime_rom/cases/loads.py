"""
Dirichlet lifts and right-hand side families.

Both benchmarks eliminate their Dirichlet dofs. With the lift ℓ_k (zero
away from the Dirichlet dofs) and y₀ = ℓ₀, the free rows of step k of the
state equation receive

    Δt·g_k = −M_f:(ℓ_k − ℓ_{k−1}) − Δt·D_f:ℓ_k − C_f:ℓ_k

and the tracking term splits into F = Δt·M_obs,f:(y_d − ℓ) and the output
constant c = ½Δt Σ_k (ℓ_k − y_{d,k})ᵀ M_obs (ℓ_k − y_{d,k}).
"""

import logging
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..affine.operators import AffineOperator, AffineVector, CaseOperators, constant_vector, quadratic_form
from ..exceptions import AssemblyError
from ..fem.lifting import dirichlet_lifting
from ..fem.spaces import FunctionSpace
from ..models.fields import TimeGrid
from .schema import CaseConfig

logger = logging.getLogger(__name__)


def inlet_profile(t) -> np.ndarray:
    """Pulsating lid factor 1 + ½cos(4πt − π)."""
    return 1.0 + 0.5 * np.cos(4.0 * np.pi * np.asarray(t, dtype=float) - np.pi)


def _boundary_value(values):
    return float(values[0]) if len(values) == 1 else tuple(float(v) for v in values)


def lift_sequence(
    config: CaseConfig,
    space: FunctionSpace,
    grid: TimeGrid,
    values: Optional[Mapping[str, list]] = None,
    time_profile: Optional[str] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Dirichlet lift at the grid times t_0, …, t_{N_t}.

    Data on the profile tag is multiplied by the time profile, all other
    tags are constant in time.

    Args:
        config: Case config (Dirichlet section)
        space: Space carrying the Dirichlet data
        grid: Time grid
        values: Overrides the configured tag values
        time_profile: Overrides the configured time profile

    Returns:
        ((N_t + 1, n) lifts, free dofs of the space)

    Raises:
        AssemblyError: On unknown tags or unordered conflicting corner data
    """
    section = config.dirichlet
    values = dict(section.values if values is None else values)
    profile = section.time_profile if time_profile is None else time_profile
    priority = section.priority or None
    profiled = section.profile_tag if profile != "constant" else None

    def zero(data):
        return [0.0] * len(data)

    steady_data = {tag: _boundary_value(zero(v) if tag == profiled else v) for tag, v in values.items()}
    steady, free = dirichlet_lifting(space, steady_data, priority)
    lifts = np.tile(steady, (grid.n_steps + 1, 1))
    if profiled is not None:
        profile_data = {tag: _boundary_value(v if tag == profiled else zero(v)) for tag, v in values.items()}
        pulsating, free_check = dirichlet_lifting(space, profile_data, priority)
        if not np.array_equal(free, free_check):
            raise AssemblyError("Dirichlet dof sets differ between the steady and the time-dependent data")
        lifts = lifts + inlet_profile(grid.all_times)[:, None] * pulsating[None, :]
    return lifts, free


def operator_times(operator: AffineOperator, vectors: AffineVector) -> AffineVector:
    """Affine family of A(µ)·v_k(µ) for time-stacked (N_t, n) vectors."""
    terms = []
    for theta_a, matrix in operator.terms():
        for theta_v, values in vectors.terms():
            terms.append((theta_a * theta_v, np.asarray(matrix @ values.T).T))
    shape = (vectors.shape[0], operator.shape[0])
    return AffineVector(terms, shape=shape)


def time_stacked(vector: AffineVector, n_steps: int) -> AffineVector:
    """Repeat a step vector family over all time steps."""
    return vector.map(lambda values: np.tile(values, (n_steps, 1)), shape=(n_steps,) + vector.shape)


def _sum_over_steps(left: np.ndarray, matrix: sp.csr_matrix, right: np.ndarray) -> float:
    return float(np.sum(left * np.asarray(matrix @ right.T).T))


def rhs_families(
    ops: CaseOperators,
    free: np.ndarray,
    lifts: np.ndarray,
    target: AffineVector,
    grid: TimeGrid,
) -> Dict[str, AffineVector]:
    """
    Target load, forcing and output constant families on the free dofs.

    Args:
        ops: Full step-level families
        free: Free step dofs
        lifts: (N_t + 1, n_step) lifts at t_0, …, t_{N_t}
        target: (N_t, n_step) desired state family
        grid: Time grid

    Returns:
        {"target_load", "forcing", "output_constant"}
    """
    lifts = np.asarray(lifts, dtype=float)
    current = lifts[1:]
    increments = lifts[1:] - lifts[:-1]
    difference = constant_vector(current) - target

    observation = ops.observation.restrict(rows=free)
    target_load = -operator_times(observation, difference)

    forcing = operator_times(ops.mass.restrict(rows=free), constant_vector(increments)).scaled(-1.0 / grid.dt)
    forcing = forcing - operator_times(ops.operator.restrict(rows=free), constant_vector(current))
    if ops.constraint is not None:
        forcing = forcing - operator_times(
            ops.constraint.restrict(rows=free), constant_vector(current)
        ).scaled(1.0 / grid.dt)

    output = quadratic_form(difference, ops.observation, difference, _sum_over_steps).scaled(0.5 * grid.dt)
    logger.debug(
        f"Right-hand side families: Q_F={target_load.q}, Q_G={forcing.q}, Q_c={output.q}"
    )
    return {"target_load": target_load, "forcing": forcing, "output_constant": output}
