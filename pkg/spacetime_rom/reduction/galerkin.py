#!/usr/bin/env python3
"""
Galerkin projection of the affine KKT system and the online solve.

Offline, every affine term is projected once onto the aggregated space:
A_q → Z_xᵀA_qZ_x, B_q → Z_pᵀB_qZ_x, F_q → Z_xᵀF_q, G_q → Z_pᵀG_q. Online,
the dense reduced saddle point system is assembled from the θ_q(µ) and
solved by LU with partial pivoting, without touching full-order data.
"""

import logging
import time
import warnings
from typing import Dict, Sequence

import numpy as np
import scipy.linalg as la

from ..affine.kkt import AffineKKT
from ..constants import PIVOT_WARNING_RATIO
from ..exceptions import ReductionError, SingularSystemError
from ..models.case import CaseId
from ..models.kkt import KKTSolution
from ..models.parameter import Parameter, ParameterBox
from ..models.rom import AggregatedSpace, OnlineSolution, ReducedFamily, ReducedModel, embed_blocks
from ..utils.logging import log_online_solve

logger = logging.getLogger(__name__)

SINGULAR_CAUSE = "reduced inf-sup failure; check the aggregation and the supremizer enrichment"


def _trial(space: AggregatedSpace, affine_kkt: AffineKKT) -> np.ndarray:
    state = embed_blocks(space, affine_kkt.layout, affine_kkt.grid.n_steps)
    control = space.control
    return np.block(
        [
            [state, np.zeros((state.shape[0], control.shape[1]))],
            [np.zeros((control.shape[0], state.shape[1])), control],
        ]
    )


def galerkin_project(
    affine_kkt: AffineKKT, space: AggregatedSpace, case_id: CaseId, box: ParameterBox
) -> ReducedModel:
    """
    Project every affine term of the KKT system onto the aggregated space.

    Args:
        affine_kkt: Full-order affine KKT families
        space: Aggregated reduced space
        case_id: Benchmark identifier recorded on the model
        box: Parameter box used to validate online parameters

    Returns:
        ReducedModel of dimension space.n_tot

    Raises:
        ReductionError: If the space does not fit the full-order layout
    """
    start = time.perf_counter()
    n_steps = affine_kkt.grid.n_steps
    for name, matrix in space.blocks.items():
        expected = n_steps * affine_kkt.layout.block_size(name)
        if matrix.shape[0] != expected:
            raise ReductionError(f"Reduced {name} block has {matrix.shape[0]} rows, layout needs {expected}")
    if space.control.shape[0] != n_steps * affine_kkt.control_size:
        raise ReductionError(
            f"Reduced control block has {space.control.shape[0]} rows, "
            f"layout needs {n_steps * affine_kkt.control_size}"
        )

    trial = _trial(space, affine_kkt)
    test = embed_blocks(space, affine_kkt.layout, n_steps)
    if trial.shape[0] != affine_kkt.A.shape[0] or test.shape[0] != affine_kkt.B.shape[0]:
        raise ReductionError(
            f"Reduced space of size ({trial.shape[0]}, {test.shape[0]}) does not match the "
            f"KKT blocks {affine_kkt.A.shape} / {affine_kkt.B.shape}"
        )

    def symmetric(matrix):
        projected = trial.T @ np.asarray(matrix @ trial)
        return 0.5 * (projected + projected.T)

    families: Dict[str, ReducedFamily] = {
        "A": ReducedFamily(
            affine_kkt.A.descriptors, np.stack([symmetric(m) for _, m in affine_kkt.A.terms()])
        ),
        "B": ReducedFamily(
            affine_kkt.B.descriptors,
            np.stack([test.T @ np.asarray(m @ trial) for _, m in affine_kkt.B.terms()]),
        ),
        "F": ReducedFamily(affine_kkt.F.descriptors, np.stack([trial.T @ v for _, v in affine_kkt.F.terms()])),
        "G": ReducedFamily(affine_kkt.G.descriptors, np.stack([test.T @ v for _, v in affine_kkt.G.terms()])),
        "c": ReducedFamily(
            affine_kkt.c.descriptors, np.array([float(v) for _, v in affine_kkt.c.terms()], dtype=float)
        ),
    }
    model = ReducedModel(
        case_id=case_id,
        grid=affine_kkt.grid,
        layout=affine_kkt.layout,
        control_size=affine_kkt.control_size,
        space=space,
        box=box,
        families=families,
    )
    logger.info(
        f"Projected {case_id.value} KKT system onto N_tot={model.n_tot} "
        f"({sum(f.q for f in families.values())} terms, {time.perf_counter() - start:.2f}s)"
    )
    return model


def smallest_singular_value(model: ReducedModel, mu: Parameter) -> float:
    matrix, _ = model.system(mu)
    return float(np.min(la.svdvals(matrix)))


def _factorize(matrix: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("error", la.LinAlgWarning)
        try:
            lu, piv = la.lu_factor(matrix, check_finite=False)
        except la.LinAlgWarning:
            return None
    pivots = np.abs(np.diag(lu))
    if pivots.size == 0 or pivots.min() <= PIVOT_WARNING_RATIO * pivots.max():
        return None
    return lu, piv


def solve_online(model: ReducedModel, mu: Parameter) -> OnlineSolution:
    """
    Dense reduced solve at µ.

    The recorded wall time covers the online assembly, the factorization,
    the solve and the objective evaluation; lifting is excluded.

    Args:
        model: Reduced model
        mu: Parameter inside the model's box

    Returns:
        OnlineSolution with the reduced coefficients and the lifted vectors

    Raises:
        ParameterError: If µ lies outside the box
        SingularSystemError: If the reduced matrix is numerically singular
    """
    model.box.validate(mu)
    start = time.perf_counter()
    matrix, rhs = model.system(mu)
    factor = _factorize(matrix)
    if factor is None:
        sigma = float(np.min(la.svdvals(matrix)))
        raise SingularSystemError(
            f"Reduced KKT matrix of dimension {matrix.shape[0]} is singular at {mu.label()}",
            smallest_pivot=sigma,
            suspected_cause=SINGULAR_CAUSE,
        )
    coefficients = la.lu_solve(factor, rhs, check_finite=False)
    n_x = model.families["A"].stack.shape[1]
    x_n, p_n = coefficients[:n_x], coefficients[n_x:]
    objective = float(
        0.5 * x_n @ (matrix[:n_x, :n_x] @ x_n) - rhs[:n_x] @ x_n + model.output_constant(mu)
    )
    wall_time = time.perf_counter() - start

    scale = float(np.max(np.abs(rhs))) if rhs.size else 0.0
    residual = float(np.max(np.abs(matrix @ coefficients - rhs))) / scale if scale > 0 else 0.0
    solution = KKTSolution(
        x=model.trial @ x_n,
        p=model.test @ p_n,
        grid=model.grid,
        layout=model.layout,
        control_size=model.control_size,
        residual=residual,
        wall_time=wall_time,
        objective=objective,
        metadata={"dimension": float(model.n_tot)},
    )
    log_online_solve(mu.as_dict(), model.n_tot, wall_time, objective, logger=logger)
    return OnlineSolution(mu, coefficients, solution, objective, wall_time)


def galerkin_residual(affine_kkt: AffineKKT, model: ReducedModel, online: OnlineSolution) -> float:
    """
    Full-order KKT residual of the lifted reduced solution, tested against the reduced space.

    Returns:
        ‖[Z_xᵀ r_x; Z_pᵀ r_p]‖_∞ relative to the reduced right-hand side
    """
    system = affine_kkt.evaluate(online.parameter)
    solution = online.solution
    residual = system.matrix() @ np.concatenate([solution.x, solution.p]) - system.rhs()
    n_x = system.n_x
    tested = np.concatenate([model.trial.T @ residual[:n_x], model.test.T @ residual[n_x:]])
    reduced_rhs = np.concatenate([model.trial.T @ system.F, model.test.T @ system.G])
    scale = float(np.max(np.abs(reduced_rhs))) if reduced_rhs.size else 0.0
    return float(np.max(np.abs(tested))) / scale if scale > 0 else float(np.max(np.abs(tested)))


def aggregation_diagnostic(
    affine_kkt: AffineKKT,
    aggregated: AggregatedSpace,
    state_only: AggregatedSpace,
    parameters: Sequence[Parameter],
    case_id: CaseId,
    box: ParameterBox,
) -> Dict[str, float]:
    """
    Compare the reduced KKT conditioning of the aggregated and the state-only spaces.

    Never raises for a singular state-only system; that outcome is the
    point of the comparison and is counted instead.

    Returns:
        Smallest singular values over the parameters for both spaces,
        their ratio and the number of parameters at which the state-only
        system was singular
    """
    with_aggregation = galerkin_project(affine_kkt, aggregated, case_id, box)
    without = galerkin_project(affine_kkt, state_only, case_id, box)
    sigma_aggregated = np.array([smallest_singular_value(with_aggregation, mu) for mu in parameters])
    sigma_state = np.array([smallest_singular_value(without, mu) for mu in parameters])
    failures = 0
    for mu in parameters:
        matrix, _ = without.system(mu)
        if _factorize(matrix) is None:
            failures += 1
    lowest_aggregated = float(sigma_aggregated.min())
    lowest_state = float(sigma_state.min())
    result = {
        "aggregated_min_singular_value": lowest_aggregated,
        "state_only_min_singular_value": lowest_state,
        "ratio": lowest_aggregated / lowest_state if lowest_state > 0 else float("inf"),
        "state_only_failures": float(failures),
    }
    logger.info(
        f"Aggregation diagnostic: σ_min aggregated {lowest_aggregated:.3e}, state-only {lowest_state:.3e}, "
        f"{failures} singular state-only systems over {len(parameters)} parameters"
    )
    return result
