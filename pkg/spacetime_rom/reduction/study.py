#!/usr/bin/env python3
"""
Error decay and speedup over a range of reduced basis sizes.
"""

import logging
import time
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..cases.problem import CaseProblem
from ..exceptions import ReductionError
from ..models.fields import VariableRole
from ..models.kkt import KKTSolution
from ..models.parameter import Parameter
from ..models.rom import BasisSet, ReducedModel
from ..models.stats import BenchmarkRow
from .aggregation import aggregate
from .errors import error_report, mean_errors
from .galerkin import galerkin_project, solve_online

logger = logging.getLogger(__name__)


def reduce_problem(problem: CaseProblem, basis_set: BasisSet, n: Optional[int] = None) -> ReducedModel:
    """Aggregate the first n modes of every basis and project the problem onto them."""
    if n is not None:
        if n > basis_set.n_max:
            raise ReductionError(f"N={n} exceeds the {basis_set.n_max} stored modes")
        basis_set = basis_set.truncate(n)
    space = aggregate(basis_set, problem.inner_products("free"))
    return galerkin_project(problem.affine_kkt, space, problem.case_id, problem.box)


def speedup_study(
    problem: CaseProblem,
    basis_set: BasisSet,
    test_parameters: Sequence[Parameter],
    n_range: Sequence[int],
    fe_solutions: Optional[Sequence[KKTSolution]] = None,
    on_row: Optional[Callable[[BenchmarkRow], None]] = None,
) -> List[BenchmarkRow]:
    """
    Mean test-set errors and speedup for every N in n_range.

    Full-order solutions are computed once per test parameter and reused
    for every N.

    Args:
        problem: Assembled case
        basis_set: Stored POD bases with at least max(n_range) modes
        test_parameters: Test set
        n_range: Basis sizes to evaluate
        fe_solutions: Precomputed full-order solutions, one per test parameter
        on_row: Called with every finished row

    Returns:
        One BenchmarkRow per N, in the order of n_range

    Raises:
        ReductionError: If n_range exceeds the stored modes or the test set is empty
    """
    if not test_parameters:
        raise ReductionError("Speedup study needs at least one test parameter")
    too_large = [n for n in n_range if n > basis_set.n_max or n < 1]
    if too_large:
        raise ReductionError(f"N values {too_large} are outside 1..{basis_set.n_max}")

    if fe_solutions is None:
        fe_solutions = [problem.solve(mu) for mu in test_parameters]
    if len(fe_solutions) != len(test_parameters):
        raise ReductionError(
            f"{len(fe_solutions)} full-order solutions given for {len(test_parameters)} test parameters"
        )
    full_ips = problem.inner_products("full")
    fe_fields = [problem.lifted_fields(solution) for solution in fe_solutions]
    fe_time = float(np.mean([solution.wall_time for solution in fe_solutions]))

    rows = []
    for n in n_range:
        start = time.perf_counter()
        model = reduce_problem(problem, basis_set, n)
        reports = []
        online_times = []
        for mu, reference, fe in zip(test_parameters, fe_fields, fe_solutions):
            online = solve_online(model, mu)
            online_times.append(online.wall_time)
            reports.append(
                error_report(
                    reference,
                    problem.lifted_fields(online.solution),
                    full_ips,
                    fe.objective,
                    online.objective,
                    problem.pressure_mean_weights,
                )
            )
        mean = mean_errors(reports)
        rom_time = float(np.mean(online_times))
        row = BenchmarkRow(
            n=n,
            n_tot=model.n_tot,
            e_state=mean.errors[VariableRole.STATE.value],
            e_control=mean.errors[VariableRole.CONTROL.value],
            e_adjoint=mean.errors[VariableRole.ADJOINT.value],
            e_pressure=mean.get(VariableRole.PRESSURE.value, float("nan")),
            e_adjoint_pressure=mean.get(VariableRole.ADJOINT_PRESSURE.value, float("nan")),
            e_output=mean.output_error,
            fe_time=fe_time,
            rom_time=rom_time,
            speedup=fe_time / rom_time if rom_time > 0 else float("inf"),
        )
        logger.info(
            f"N={n:3d} N_tot={row.n_tot:4d} e_y={row.e_state:.2e} e_u={row.e_control:.2e} "
            f"e_p={row.e_adjoint:.2e} e_J={row.e_output:.2e} speedup={row.speedup:.1f} "
            f"({time.perf_counter() - start:.2f}s)"
        )
        rows.append(row)
        if on_row is not None:
            on_row(row)
    return rows
