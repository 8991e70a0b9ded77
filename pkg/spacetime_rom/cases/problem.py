"""
Benchmark problem assembly.

A CaseProblem turns a CaseConfig into everything the pipeline needs: the
reference mesh and spaces, the step-level affine families, the Dirichlet
lifts, the free-dof affine KKT system and the norms of every variable.
Full-order systems can be built either from the affine families or by
direct assembly at one parameter; the two paths are independent.
"""

import logging
import time
from functools import cached_property
from typing import Dict, Optional

import numpy as np
import scipy.sparse as sp

from ..affine.graetz import graetz_affine_decomposition
from ..affine.kkt import AffineKKT, build_affine_kkt
from ..affine.operators import AffineOperator, AffineVector, CaseOperators, constant_vector
from ..affine.stokes import stokes_affine_decomposition, stokes_step_layout
from ..fem.assembly import assemble_mass, assemble_stiffness
from ..fem.mesh import build_structured_mesh
from ..fem.spaces import FunctionSpace
from ..models.basis import InnerProduct
from ..models.case import CaseId
from ..models.fields import SpaceTimeField, VariableRole
from ..models.kkt import (
    BlockKKT,
    KKTRightHandSide,
    KKTSolution,
    ObjectiveOperators,
    StateOperators,
    StepLayout,
)
from ..models.parameter import Parameter, ParameterBox
from ..solver.kkt import assemble_kkt, objective_value, quadratic_objective, solve_kkt
from .loads import lift_sequence, rhs_families, time_stacked
from .schema import CaseConfig
from .stokes_target import generate_stokes_target

logger = logging.getLogger(__name__)


def _block(matrix: sp.spmatrix, rows: np.ndarray, cols: Optional[np.ndarray] = None) -> sp.csr_matrix:
    out = sp.csr_matrix(matrix)[rows, :]
    return out if cols is None else sp.csr_matrix(out[:, cols])


class CaseProblem:
    """
    Assembled benchmark problem.

    Args:
        config: Case configuration
        target: Precomputed Stokes target velocity (generated when omitted)

    Raises:
        MeshError: If the mesh resolution does not resolve the subdomains
        AffineError: If the decomposition cannot be built
    """

    def __init__(self, config: CaseConfig, target: Optional[SpaceTimeField] = None):
        start = time.perf_counter()
        self.config = config
        self.case_id: CaseId = config.case_id
        self.grid = config.grid()
        self.box: ParameterBox = config.box()
        self.alpha = float(config.objective.alpha)
        self.mesh = build_structured_mesh(self.case_id, config.mesh.nx, config.mesh.ny)

        if self.is_stokes:
            self.spaces: Dict[str, FunctionSpace] = {
                "velocity": FunctionSpace(self.mesh, order=2, components=2),
                "pressure": FunctionSpace(self.mesh, order=1, components=1),
            }
            self.ops: CaseOperators = stokes_affine_decomposition(self.mesh, self.spaces)
            self.full_layout = stokes_step_layout(self.spaces)
            velocity_lifts, free_velocity = lift_sequence(config, self.spaces["velocity"], self.grid)
            n_v = self.spaces["velocity"].dimension
            self.lifts = np.zeros((self.grid.n_steps + 1, self.ops.step_size))
            self.lifts[:, :n_v] = velocity_lifts
            self.free = np.concatenate([free_velocity, np.arange(n_v, self.ops.step_size)])
            self.free_velocity = free_velocity
            self.layout = StepLayout(
                (
                    ("state", free_velocity.size),
                    ("pressure", self.spaces["pressure"].dimension),
                    ("mean", 1),
                )
            )
            if target is None:
                target = generate_stokes_target(config, self.mesh, self.spaces)
            self.target_field = target
            padded = np.zeros((self.grid.n_steps, self.ops.step_size))
            padded[:, :n_v] = self.target_field.values
            self.target: AffineVector = constant_vector(padded)
        else:
            self.spaces = {"state": FunctionSpace(self.mesh, order=1, components=1)}
            self.ops = graetz_affine_decomposition(self.mesh, self.spaces)
            self.full_layout = StepLayout((("state", self.ops.step_size),))
            self.lifts, self.free = lift_sequence(config, self.spaces["state"], self.grid)
            self.free_velocity = self.free
            self.layout = StepLayout((("state", self.free.size),))
            self.target_field = None
            self.target = time_stacked(self.ops.target, self.grid.n_steps)

        self.free_ops = self.ops.restrict(self.free)
        families = rhs_families(self.ops, self.free, self.lifts, self.target, self.grid)
        self.affine_kkt: AffineKKT = build_affine_kkt(
            self.free_ops,
            self.alpha,
            self.grid,
            self.layout,
            families["target_load"],
            families["forcing"],
            families["output_constant"],
        )
        logger.info(
            f"Assembled {self.case_id.value} problem: {self.n_free} free state dofs per step, "
            f"{self.control_size} control dofs, KKT dimension {self.full_dimension} "
            f"({time.perf_counter() - start:.2f}s)"
        )

    @property
    def is_stokes(self) -> bool:
        return self.case_id is CaseId.STOKES_CAVITY

    @property
    def n_free(self) -> int:
        return int(self.free.size)

    @property
    def control_size(self) -> int:
        return self.ops.control_size

    @property
    def full_dimension(self) -> int:
        """N_t·(2·free step size + control size)."""
        return self.grid.n_steps * (2 * self.n_free + self.control_size)

    def parameter(self, values) -> Parameter:
        return self.box.validate(self.box.parameter(values))

    def kkt(self, mu: Parameter) -> BlockKKT:
        """Direct assembly of the free-dof KKT system at one parameter."""
        self.box.validate(mu)
        f = self.free
        mass = self.ops.mass.evaluate(mu)
        operator = self.ops.operator.evaluate(mu)
        constraint = self.ops.constraint.evaluate(mu) if self.ops.constraint is not None else None
        observation = self.ops.observation.evaluate(mu)
        state_ops = StateOperators(
            _block(mass, f, f),
            _block(operator, f, f),
            None if constraint is None else _block(constraint, f, f),
        )
        objective_ops = ObjectiveOperators(
            _block(observation, f, f), self.ops.control_mass.evaluate(mu), self.alpha
        )
        current = self.lifts[1:]
        increments = self.lifts[1:] - self.lifts[:-1]
        y_d = self.target.evaluate(mu)
        target_load = (_block(observation, f) @ (y_d - current).T).T
        forcing = -(_block(mass, f) @ increments.T).T / self.grid.dt - (_block(operator, f) @ current.T).T
        if constraint is not None:
            forcing = forcing - (_block(constraint, f) @ current.T).T / self.grid.dt
        rhs = KKTRightHandSide(np.asarray(target_load), np.asarray(forcing))
        return assemble_kkt(
            state_ops,
            _block(self.ops.control_coupling.evaluate(mu), f),
            objective_ops,
            self.grid,
            rhs,
            layout=self.layout,
        )

    def solve(self, mu: Parameter, system: Optional[BlockKKT] = None) -> KKTSolution:
        """Full-order solve at µ; the objective J(µ) is stored on the solution."""
        self.box.validate(mu)
        start = time.perf_counter()
        system = system if system is not None else self.affine_kkt.evaluate(mu)
        solution = solve_kkt(system)
        solution.objective = quadratic_objective(system, solution.x, self.affine_kkt.output_constant(mu))
        solution.wall_time = time.perf_counter() - start
        solution.metadata["dimension"] = float(system.dimension)
        return solution

    def lifted_state_steps(self, solution: KKTSolution) -> np.ndarray:
        """(N_t, n_step) full state steps including the lift."""
        steps = self.lifts[1:].copy()
        steps[:, self.free] += solution.state_vector().reshape(self.grid.n_steps, self.n_free)
        return steps

    def lifted_fields(self, solution: KKTSolution) -> Dict[VariableRole, SpaceTimeField]:
        """
        Per-role fields on the full spaces.

        State (velocity) carries the lift; the adjoint vanishes on the
        Dirichlet dofs; the mean multipliers are dropped.
        """
        n_steps = self.grid.n_steps
        full_state = self.lifted_state_steps(solution)
        full_adjoint = np.zeros((n_steps, self.ops.step_size))
        full_adjoint[:, self.free] = solution.p.reshape(n_steps, self.n_free)
        fields = {
            VariableRole.STATE: SpaceTimeField(VariableRole.STATE, full_state[:, self.full_layout.slice("state")]),
            VariableRole.ADJOINT: SpaceTimeField(
                VariableRole.ADJOINT, full_adjoint[:, self.full_layout.slice("state")]
            ),
            VariableRole.CONTROL: SpaceTimeField.from_flat(
                VariableRole.CONTROL, solution.control_vector(), n_steps
            ),
        }
        if self.is_stokes:
            fields[VariableRole.PRESSURE] = SpaceTimeField(
                VariableRole.PRESSURE, full_state[:, self.full_layout.slice("pressure")]
            )
            fields[VariableRole.ADJOINT_PRESSURE] = SpaceTimeField(
                VariableRole.ADJOINT_PRESSURE, full_adjoint[:, self.full_layout.slice("pressure")]
            )
        return fields

    def objective(self, solution: KKTSolution, mu: Parameter) -> float:
        """J evaluated on the lifted fields by rectangle-rule quadrature."""
        state = SpaceTimeField(VariableRole.STATE, self.lifted_state_steps(solution))
        control = SpaceTimeField.from_flat(VariableRole.CONTROL, solution.control_vector(), self.grid.n_steps)
        y_d = SpaceTimeField(VariableRole.STATE, self.target.evaluate(mu))
        return objective_value(
            (state, control),
            y_d,
            self.alpha,
            self.grid,
            self.ops.observation.evaluate(mu),
            self.ops.control_mass.evaluate(mu),
        )

    @cached_property
    def spatial_grams(self) -> Dict[VariableRole, sp.csr_matrix]:
        """Full-space spatial gram matrices: H¹ for state and adjoint, L² otherwise."""
        primary = self.spaces["velocity"] if self.is_stokes else self.spaces["state"]
        h1 = sp.csr_matrix(assemble_stiffness(primary) + assemble_mass(primary))
        reference = self.box.reference_parameter()
        grams = {
            VariableRole.STATE: h1,
            VariableRole.ADJOINT: h1,
            VariableRole.CONTROL: self.ops.control_mass.evaluate(reference),
        }
        if self.is_stokes:
            l2 = assemble_mass(self.spaces["pressure"])
            grams[VariableRole.PRESSURE] = l2
            grams[VariableRole.ADJOINT_PRESSURE] = l2
        return grams

    def inner_products(self, scope: str = "free") -> Dict[VariableRole, InnerProduct]:
        """
        Space-time inner products per role.

        Args:
            scope: "free" for the reduced-basis spaces (state blocks on free
                dofs) or "full" for comparing lifted fields
        """
        out = {}
        for role, gram in self.spatial_grams.items():
            if scope == "free" and role in (VariableRole.STATE, VariableRole.ADJOINT):
                gram = _block(gram, self.free_velocity, self.free_velocity)
            label = "h1" if role in (VariableRole.STATE, VariableRole.ADJOINT) else "l2"
            out[role] = InnerProduct(gram, self.grid, label)
        return out

    @cached_property
    def pressure_mean_weights(self) -> Optional[np.ndarray]:
        """∫ψ_i per pressure dof (Stokes only)."""
        if not self.is_stokes:
            return None
        pressure = self.spaces["pressure"]
        return np.asarray(assemble_mass(pressure) @ np.ones(pressure.dimension)).ravel()

    @cached_property
    def divergence_family(self) -> Optional[AffineOperator]:
        """b(v, q; µ) on free velocity columns and pressure rows, (𝒩_p, 𝒩_y,free)."""
        if not self.is_stokes:
            return None
        rows = np.arange(self.spaces["velocity"].dimension, self.ops.step_size - 1)
        return self.ops.constraint.restrict(rows=rows, cols=self.free_velocity)

    def snapshot_vectors(self, solution: KKTSolution) -> Dict[VariableRole, np.ndarray]:
        """Free-dof space-time vectors per role, as collected for POD."""
        n_steps = self.grid.n_steps
        state = self.layout.split(solution.state_vector(), n_steps)
        adjoint = self.layout.split(solution.p, n_steps)
        vectors = {
            VariableRole.STATE: state["state"].reshape(-1),
            VariableRole.ADJOINT: adjoint["state"].reshape(-1),
            VariableRole.CONTROL: np.asarray(solution.control_vector()),
        }
        if self.is_stokes:
            vectors[VariableRole.PRESSURE] = state["pressure"].reshape(-1)
            vectors[VariableRole.ADJOINT_PRESSURE] = adjoint["pressure"].reshape(-1)
        return vectors
