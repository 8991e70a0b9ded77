#!/usr/bin/env python3
"""
Space-Time Field Models

This module contains the time grid and the per-variable space-time field
containers used by the full order and reduced order solvers.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..exceptions import KKTError


class VariableRole(str, Enum):
    """Role of a variable in the optimality system."""

    STATE = "state"
    CONTROL = "control"
    ADJOINT = "adjoint"
    PRESSURE = "pressure"
    ADJOINT_PRESSURE = "adjoint_pressure"


@dataclass(frozen=True)
class TimeGrid:
    """
    Uniform partition of (0, T].

    Attributes:
        final_time: T
        n_steps: N_t
    """

    final_time: float
    n_steps: int

    def __post_init__(self):
        if self.n_steps < 1:
            raise KKTError(f"TimeGrid needs at least one step, got n_steps={self.n_steps}")
        if not self.final_time > 0.0:
            raise KKTError(f"TimeGrid needs a positive final time, got T={self.final_time!r}")

    @property
    def dt(self) -> float:
        return self.final_time / self.n_steps

    @property
    def times(self) -> np.ndarray:
        """Step end times t_1, …, t_{N_t}."""
        return self.dt * np.arange(1, self.n_steps + 1)

    @property
    def all_times(self) -> np.ndarray:
        """Grid times t_0, …, t_{N_t}."""
        return self.dt * np.arange(self.n_steps + 1)


@dataclass(frozen=True, eq=False)
class SpaceTimeField:
    """
    Coefficients of one variable over all time steps.

    Attributes:
        role: Variable role
        values: (n_steps, n_dofs) array, row k holds step k+1
    """

    role: VariableRole
    values: np.ndarray

    def __post_init__(self):
        if np.ndim(self.values) != 2:
            raise KKTError(
                f"SpaceTimeField values must be (n_steps, n_dofs), got shape {np.shape(self.values)}"
            )

    @property
    def n_steps(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_dofs(self) -> int:
        return int(self.values.shape[1])

    def step(self, k: int) -> np.ndarray:
        """Coefficients at time step k (1-based)."""
        return self.values[k - 1]

    def flatten(self) -> np.ndarray:
        """Step-major stacked vector [v_1; …; v_{N_t}]."""
        return np.ascontiguousarray(self.values).reshape(-1)

    @classmethod
    def from_flat(cls, role: VariableRole, vector: np.ndarray, n_steps: int) -> "SpaceTimeField":
        vector = np.asarray(vector, dtype=float)
        if vector.size % n_steps:
            raise KKTError(f"Vector of length {vector.size} cannot be split into {n_steps} steps")
        return cls(role, vector.reshape(n_steps, -1))

    @classmethod
    def zeros(cls, role: VariableRole, n_steps: int, n_dofs: int) -> "SpaceTimeField":
        return cls(role, np.zeros((n_steps, n_dofs)))
