"""
Desired velocity of the Stokes cavity problem.

The target is the uncontrolled time-dependent Stokes flow on the reference
square driven by a steady lid, with fixed viscosity. It is computed once per
mesh and grid by sequential backward Euler and enters every KKT assembly as
a parameter-independent y_d.
"""

import logging
import time
from typing import Dict

import numpy as np

from ..affine.stokes import stokes_affine_decomposition
from ..exceptions import SingularSystemError, StageError
from ..fem.spaces import FunctionSpace
from ..models.fields import SpaceTimeField, VariableRole
from ..models.mesh import Mesh
from ..models.parameter import Parameter
from ..solver.spacetime import march_state
from .loads import lift_sequence
from .schema import CaseConfig

logger = logging.getLogger(__name__)


def generate_stokes_target(
    config: CaseConfig,
    mesh: Mesh,
    spaces: Dict[str, FunctionSpace],
) -> SpaceTimeField:
    """
    Forward uncontrolled Stokes solve with a steady lid.

    Args:
        config: Stokes case config (target and Dirichlet sections)
        mesh: Reference mesh
        spaces: "velocity" and "pressure" spaces on mesh

    Returns:
        (N_t, 𝒩_y) velocity field including its boundary values

    Raises:
        StageError: If the forward solve fails
    """
    start = time.perf_counter()
    grid = config.grid()
    ops = stokes_affine_decomposition(mesh, spaces)
    # Reference geometry; the viscosity may lie outside the parameter box.
    mu = Parameter(("mu_phys", "mu_geo"), (float(config.target.viscosity), 1.0))

    values = {tag: [0.0] * len(v) for tag, v in config.dirichlet.values.items()}
    lid_tag = config.dirichlet.profile_tag or "gamma_in"
    values[lid_tag] = list(config.target.lid_velocity)
    velocity_lifts, free_velocity = lift_sequence(
        config, spaces["velocity"], grid, values=values, time_profile="constant"
    )
    n_v = spaces["velocity"].dimension
    n_step = ops.step_size
    lifts = np.zeros((grid.n_steps + 1, n_step))
    lifts[:, :n_v] = velocity_lifts
    free = np.concatenate([free_velocity, np.arange(n_v, n_step)])

    mass = ops.mass.evaluate(mu)
    operator = ops.operator.evaluate(mu)
    constraint = ops.constraint.evaluate(mu)
    lift = lifts[1]
    forcing = -(operator[free, :] @ lift) - (constraint[free, :] @ lift) / grid.dt
    try:
        homogeneous = march_state(
            operator[free, :][:, free],
            mass[free, :][:, free],
            grid,
            np.zeros(free.size),
            np.tile(forcing, (grid.n_steps, 1)),
            constraint=constraint[free, :][:, free],
        )
    except (RuntimeError, SingularSystemError) as e:
        raise StageError("stokes_target", f"uncontrolled Stokes solve failed: {e}") from e

    velocity = np.tile(velocity_lifts[1], (grid.n_steps, 1))
    velocity[:, free_velocity] += homogeneous[:, : free_velocity.size]
    logger.info(
        f"Generated Stokes target: {grid.n_steps} steps, {n_v} velocity dofs "
        f"in {time.perf_counter() - start:.2f}s"
    )
    return SpaceTimeField(VariableRole.STATE, velocity)
