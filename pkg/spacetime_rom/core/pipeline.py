#!/usr/bin/env python3
"""
Offline Reduction Pipeline

This module runs the offline stage as a fixed sequence of steps (assembly,
snapshots, POD, supremizers, aggregation, projection, persistence) and
provides the online, benchmark and inspect workflows that read the stored
artifacts back. Each offline step is timed and reported as a STAGE event;
a failing step aborts the run with a StageError naming the stage.
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import __version__
from ..cases.presets import SCALES, case_config, sample_parameters
from ..cases.problem import CaseProblem
from ..cases.schema import CaseConfig, load_case_config
from ..config.env import Env
from ..exceptions import ArtifactError, StageError
from ..models.basis import SnapshotSet
from ..models.case import CaseId
from ..models.fields import SpaceTimeField, VariableRole
from ..models.kkt import KKTSolution
from ..models.manifest import RunManifest
from ..models.parameter import Parameter, parse_parameter_text
from ..models.rom import PARABOLIC, STOKES, AggregatedSpace, BasisSet, ReducedModel
from ..models.stats import BenchmarkRow, SnapshotStats
from ..reduction.aggregation import aggregate, full_order_dimension, reduced_dimension
from ..reduction.errors import error_report
from ..reduction.galerkin import galerkin_project, solve_online
from ..reduction.pod import compute_pod_basis
from ..reduction.study import speedup_study
from ..reduction.supremizer import SupremizerOperator
from ..utils.logging import log_stage_event
from .orchestrator import SnapshotOrchestrator
from .output import (
    append_benchmark_row,
    initialize_benchmark_csv,
    online_record,
    read_parameter_file,
    write_online_csv,
    write_online_fields,
)
from .progress import BatchProgressReporter
from .storage import (
    ArtifactWriter,
    load_basis_set,
    load_manifest,
    load_reduced_model,
    read_matrix,
    save_basis_set,
    save_reduced_model,
    spill_snapshots,
    write_manifest,
)

logger = logging.getLogger(__name__)

CASE_FILENAME = "case.json"
TARGET_FILENAME = "target.strm"
BENCHMARK_FILENAME = "benchmark.csv"
ONLINE_FILENAME = "online.csv"

# Basis name → snapshot role, in storage order
_POD_ROLES = {
    PARABOLIC: (
        ("state", VariableRole.STATE),
        ("adjoint", VariableRole.ADJOINT),
        ("control", VariableRole.CONTROL),
    ),
    STOKES: (
        ("state", VariableRole.STATE),
        ("adjoint", VariableRole.ADJOINT),
        ("control", VariableRole.CONTROL),
        ("pressure", VariableRole.PRESSURE),
        ("adjoint_pressure", VariableRole.ADJOINT_PRESSURE),
    ),
}
_SUPREMIZERS = (("supremizer", VariableRole.PRESSURE), ("adjoint_supremizer", VariableRole.ADJOINT_PRESSURE))


def resolve_case_config(text: str) -> CaseConfig:
    """
    Load a case config from a file, or build a preset from "graetz[:scale]".

    Raises:
        ValueError: If the text is neither a readable config nor a preset name
    """
    path = Path(text)
    if path.is_file():
        return load_case_config(path)
    name, _, scale = text.partition(":")
    try:
        case = CaseId.parse(name)
    except ValueError:
        raise ValueError(
            f"'{text}' is neither a case config file nor a preset "
            f"({', '.join(c.value for c in CaseId)}, optionally ':' + one of {', '.join(SCALES)})"
        ) from None
    return case_config(case, scale or "desk")


def _kind(case_id: CaseId) -> str:
    return STOKES if case_id is CaseId.STOKES_CAVITY else PARABOLIC


@dataclass
class OfflineContext:
    """Inputs of one offline run."""

    config: CaseConfig
    out_dir: Path
    n: int
    n_keep: int
    seed: int
    workers: int = 1
    scratch_dir: Optional[str] = None


@dataclass
class OfflineState:
    """Carries results through the offline pipeline."""

    problem: Optional[CaseProblem] = None
    training: List[Parameter] = field(default_factory=list)
    solutions: List[KKTSolution] = field(default_factory=list)
    snapshots: Dict[VariableRole, SnapshotSet] = field(default_factory=dict)
    snapshot_stats: Optional[SnapshotStats] = None
    basis_set: Optional[BasisSet] = None
    space: Optional[AggregatedSpace] = None
    model: Optional[ReducedModel] = None
    manifest: Optional[RunManifest] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return _kind(self.problem.case_id)


class OfflineStep(ABC):
    """Base class for offline pipeline steps."""

    stage: str = ""

    def applies(self, state: OfflineState, context: OfflineContext) -> bool:
        return True

    @abstractmethod
    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        """
        Run this step.

        Args:
            state: Results of the previous steps
            context: Run inputs

        Returns:
            Updated state

        Raises:
            Exception: Any failure; the pipeline wraps it in a StageError
        """

    def details(self, state: OfflineState) -> Dict[str, Any]:
        return {}

    def __str__(self) -> str:
        return self.__class__.__name__


class AssemblyStep(OfflineStep):
    """Build the mesh, the affine families and the free-dof KKT system."""

    stage = "assembly"

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        state.problem = CaseProblem(context.config)
        return state

    def details(self, state: OfflineState) -> Dict[str, Any]:
        return {"full_dimension": state.problem.full_dimension, "free_dofs": state.problem.n_free}


class SnapshotStep(OfflineStep):
    """Solve the full-order system at every training parameter and collect the snapshot sets."""

    stage = "snapshots"

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        state.training = sample_parameters(context.config, "train", seed=context.seed)
        orchestrator = SnapshotOrchestrator(state.problem, context.workers)
        state.solutions = orchestrator.solve_all(state.training)
        state.snapshot_stats = orchestrator.stats

        vectors: Dict[VariableRole, List[np.ndarray]] = {}
        for solution in state.solutions:
            for role, vector in state.problem.snapshot_vectors(solution).items():
                vectors.setdefault(role, []).append(vector)
        state.snapshots = {
            role: SnapshotSet.from_vectors(role, state.training, columns) for role, columns in vectors.items()
        }
        if context.scratch_dir:
            spill_snapshots(
                context.scratch_dir,
                state.problem.case_id.value,
                {role.value: snaps.matrix for role, snaps in state.snapshots.items()},
            )
        return state

    def details(self, state: OfflineState) -> Dict[str, Any]:
        stats = state.snapshot_stats
        return {
            "samples": len(state.training),
            "avg_time_per_solve": round(stats.avg_time_per_solve, 4) if stats else None,
            "max_residual": stats.max_residual if stats else None,
        }


class PODStep(OfflineStep):
    """One POD basis per variable, each in the norm of its role."""

    stage = "pod"

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        ips = state.problem.inner_products("free")
        bases = {
            name: compute_pod_basis(state.snapshots[role], ips[role], context.n_keep)
            for name, role in _POD_ROLES[state.kind]
        }
        state.basis_set = BasisSet(state.kind, bases)
        return state

    def details(self, state: OfflineState) -> Dict[str, Any]:
        return {name: basis.size for name, basis in state.basis_set.bases.items()}


class SupremizerStep(OfflineStep):
    """Supremizers of the pressure and adjoint pressure snapshots, compressed by POD."""

    stage = "supremizers"

    def applies(self, state: OfflineState, context: OfflineContext) -> bool:
        return state.kind == STOKES

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        ips = state.problem.inner_products("free")
        operator = SupremizerOperator(state.problem.divergence_family, ips[VariableRole.STATE])
        bases = dict(state.basis_set.bases)
        for name, role in _SUPREMIZERS:
            snaps = operator.snapshots(state.snapshots[role])
            bases[name] = compute_pod_basis(snaps, ips[VariableRole.STATE], context.n_keep)
        state.basis_set = BasisSet(state.kind, bases)
        return state


class AggregationStep(OfflineStep):
    """Truncate every basis to N and aggregate state and adjoint."""

    stage = "aggregation"

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        n = min(context.n, state.basis_set.n_max)
        if n < context.n:
            logger.warning(f"Only {n} POD modes available for every role; using N={n} instead of {context.n}")
        state.space = aggregate(state.basis_set.truncate(n), state.problem.inner_products("free"))
        return state

    def details(self, state: OfflineState) -> Dict[str, Any]:
        return {"n": state.space.n, "n_tot": state.space.n_tot, "deficiency": dict(state.space.deficiency)}


class ProjectionStep(OfflineStep):
    """Galerkin projection of every affine term onto the aggregated space."""

    stage = "projection"

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        problem = state.problem
        state.model = galerkin_project(problem.affine_kkt, state.space, problem.case_id, problem.box)
        return state


class PersistStep(OfflineStep):
    """Write the case, the bases, the reduced model and the manifest."""

    stage = "persist"

    def process(self, state: OfflineState, context: OfflineContext) -> OfflineState:
        problem = state.problem
        writer = ArtifactWriter(context.out_dir)
        writer.text(CASE_FILENAME, context.config.to_json(), "case")
        if problem.target_field is not None:
            writer.matrix(TARGET_FILENAME, problem.target_field.values.T, "target")
        bases = save_basis_set(writer, state.basis_set)
        save_reduced_model(writer, state.model)

        state.manifest = RunManifest(
            case_id=problem.case_id.value,
            config_hash=context.config.config_hash(),
            seed=context.seed,
            grid={"final_time": problem.grid.final_time, "n_steps": problem.grid.n_steps, "dt": problem.grid.dt},
            dimensions={
                "full_order": problem.full_dimension,
                "free_state_dofs": problem.n_free,
                "control_dofs": problem.control_size,
                "n_max": len(state.training),
                "n": state.space.n,
                "n_tot": state.model.n_tot,
            },
            bases=bases,
            artifacts=list(writer.records),
            timings=dict(state.timings),
            tool_version=__version__,
        )
        write_manifest(context.out_dir, state.manifest)
        return state

    def details(self, state: OfflineState) -> Dict[str, Any]:
        return {"artifacts": len(state.manifest.artifacts)}


class OfflinePipeline:
    """Runs the offline steps in order and times each one."""

    def __init__(self, steps: Optional[List[OfflineStep]] = None):
        """
        Args:
            steps: Custom list of steps (uses the full offline sequence if None)
        """
        if steps is None:
            self.steps = [
                AssemblyStep(),
                SnapshotStep(),
                PODStep(),
                SupremizerStep(),
                AggregationStep(),
                ProjectionStep(),
                PersistStep(),
            ]
        else:
            self.steps = steps

    def run(self, context: OfflineContext, state: Optional[OfflineState] = None) -> OfflineState:
        """
        Raises:
            StageError: If a step fails numerically
            ArtifactError: If a step finds inconsistent artifacts
            OSError: If a step cannot read or write its files
        """
        state = state if state is not None else OfflineState()
        for step in self.steps:
            if state.problem is not None and not step.applies(state, context):
                logger.debug(f"Skipping step {step}")
                continue
            logger.debug(f"Running step {step}")
            start = time.perf_counter()
            try:
                state = step.process(state, context)
            except StageError:
                raise
            except (ArtifactError, OSError) as e:
                logger.error(f"Offline stage '{step.stage}' failed: {e}")
                raise
            except Exception as e:
                logger.error(f"Offline stage '{step.stage}' failed: {e}")
                raise StageError(step.stage, str(e)) from e
            duration = time.perf_counter() - start
            state.timings[step.stage] = duration
            log_stage_event(step.stage, duration, step.details(state), logger=logger)
        return state


def offline_context(config: CaseConfig, out_dir, env: Env, n: Optional[int] = None) -> OfflineContext:
    """
    Combine the case config, the CLI overrides and the runtime settings.

    The bases keep max(N, max(n_range)) modes so benchmarks can truncate them.

    Raises:
        ValueError: If N is not in 1..N_max
    """
    n_max = config.reduction.n_max
    n = config.reduction.n if n is None else int(n)
    if not 1 <= n <= n_max:
        raise ValueError(f"N={n} must lie in 1..{n_max} (N_max of the case)")
    n_keep = max([n] + list(config.reduction.n_range))
    return OfflineContext(
        config=config,
        out_dir=Path(out_dir),
        n=n,
        n_keep=n_keep,
        seed=config.reduction.seed if env.SEED is None else env.SEED,
        workers=env.WORKERS,
        scratch_dir=env.SCRATCH_DIR,
    )


def run_offline(config: CaseConfig, out_dir, env: Optional[Env] = None, n: Optional[int] = None) -> RunManifest:
    """
    Build and store the reduced model of a case.

    Args:
        config: Case config
        out_dir: Output directory
        env: Runtime settings (defaults to the installed Env)
        n: Override of the retained POD modes

    Returns:
        The written RunManifest

    Raises:
        ValueError: If N is out of range
        StageError: If an offline stage fails
    """
    env = env if env is not None else Env.current_or_default()
    context = offline_context(config, out_dir, env, n)
    start = time.perf_counter()
    BatchProgressReporter.log_offline_start(
        config.case_id.value,
        config.scale,
        config.reduction.n_max,
        context.n,
        context.workers,
        config.time.n_steps,
        reduced_dimension(_kind(config.case_id), context.n),
    )
    state = OfflinePipeline().run(context)
    BatchProgressReporter.log_offline_completion(state.timings, state.model.n_tot, time.perf_counter() - start)
    return state.manifest


@dataclass
class StoredRun:
    """Offline artifacts read back from a run directory."""

    root: Path
    manifest: RunManifest
    config: CaseConfig
    model: ReducedModel

    def problem(self) -> CaseProblem:
        """Reassemble the full-order problem, reusing the stored Stokes target."""
        target = None
        if (self.root / TARGET_FILENAME).is_file():
            target = SpaceTimeField(VariableRole.STATE, read_matrix(self.root / TARGET_FILENAME).T)
        return CaseProblem(self.config, target=target)

    def basis_set(self) -> BasisSet:
        return load_basis_set(self.root, self.manifest)


def load_run(out_dir) -> StoredRun:
    """
    Read and verify an offline run.

    Raises:
        ArtifactError: If the manifest, a checksum, the case file or the model is inconsistent
    """
    root = Path(out_dir)
    manifest = load_manifest(root, verify=True)
    try:
        config = load_case_config(root / CASE_FILENAME)
    except ValueError as e:
        raise ArtifactError(f"Stored case config is unusable: {e}") from e
    if config.config_hash() != manifest.config_hash:
        raise ArtifactError("Stored case config does not match the manifest config hash")
    model = load_reduced_model(root)
    if model.case_id.value != manifest.case_id:
        raise ArtifactError(f"Reduced model is for {model.case_id.value}, manifest for {manifest.case_id}")
    return StoredRun(root, manifest, config, model)


def online_parameters(
    run: StoredRun,
    mu_texts: Optional[Sequence[str]] = None,
    mu_file: Optional[str] = None,
    test_size: Optional[int] = None,
) -> List[Parameter]:
    """
    Collect the online parameters from --mu, --mu-file and --test-size.

    Falls back to the showcase parameter (or the reference one) when none
    are given.

    Raises:
        ParameterError: If a parameter is malformed or outside the box
    """
    box = run.model.box
    texts = list(mu_texts or [])
    if mu_file:
        texts.extend(read_parameter_file(mu_file))
    parameters = [parse_parameter_text(text, box) for text in texts]
    if test_size:
        parameters.extend(sample_parameters(run.config, "test", seed=run.manifest.seed, count=test_size))
    if not parameters:
        showcase = run.config.parameters.showcase
        parameters = [box.parameter(showcase) if showcase else box.reference_parameter()]
    for mu in parameters:
        box.validate(mu)
    return parameters


def run_online(
    out_dir,
    mu_texts: Optional[Sequence[str]] = None,
    mu_file: Optional[str] = None,
    test_size: Optional[int] = None,
    compare_fe: bool = False,
    results: Optional[str] = None,
) -> Path:
    """
    Reduced solves at the requested parameters.

    Writes one CSV row per parameter and, per parameter, the reduced
    coefficients and the lifted state and control fields.

    Returns:
        Path of the online CSV

    Raises:
        ArtifactError: If the stored run is inconsistent
        ParameterError: If a parameter lies outside the box
    """
    run = load_run(out_dir)
    parameters = online_parameters(run, mu_texts, mu_file, test_size)
    results_dir = Path(results) if results else run.root / "online"
    problem = run.problem()
    model = run.model
    with_pressure = problem.is_stokes
    full_ips = problem.inner_products("full") if compare_fe else None

    records = []
    for index, mu in enumerate(parameters):
        online = solve_online(model, mu)
        lifted = problem.lifted_fields(online.solution)
        stored = {role: lifted[role].values for role in (VariableRole.STATE, VariableRole.CONTROL)}
        if with_pressure:
            stored[VariableRole.PRESSURE] = lifted[VariableRole.PRESSURE].values
        write_online_fields(results_dir, index, online, stored)

        report = fe = None
        if compare_fe:
            fe = problem.solve(mu)
            report = error_report(
                problem.lifted_fields(fe),
                lifted,
                full_ips,
                fe.objective,
                online.objective,
                problem.pressure_mean_weights,
            )
            logger.info(f"µ #{index} ({mu.label()}): J_N={online.objective:.6e} e_J={report.output_error:.2e}")
        else:
            logger.info(f"µ #{index} ({mu.label()}): J_N={online.objective:.6e} ({online.wall_time * 1e3:.2f} ms)")
        records.append(
            online_record(
                index,
                online,
                model.n_tot,
                report,
                fe.objective if fe is not None else None,
                fe.wall_time if fe is not None else None,
                with_pressure,
            )
        )

    return write_online_csv(results_dir / ONLINE_FILENAME, model.box.names, records, compare_fe, with_pressure)


def run_benchmark(
    out_dir,
    n_range: Optional[Sequence[int]] = None,
    test_size: Optional[int] = None,
    results: Optional[str] = None,
) -> Tuple[Path, List[BenchmarkRow]]:
    """
    Error decay and speedup over a range of N on a seeded test set.

    Rows are appended to the CSV as soon as they are finished.

    Raises:
        ValueError: If n_range exceeds the stored modes
        ArtifactError: If the stored run is inconsistent
    """
    run = load_run(out_dir)
    basis_set = run.basis_set()
    n_range = list(n_range) if n_range else list(run.config.reduction.n_range) or [run.model.space.n]
    too_large = [n for n in n_range if n < 1 or n > basis_set.n_max]
    if too_large:
        raise ValueError(f"N values {too_large} are outside 1..{basis_set.n_max} (modes stored by the offline run)")
    test_size = test_size or run.config.reduction.test_size
    test_parameters = sample_parameters(run.config, "test", seed=run.manifest.seed, count=test_size)

    start = time.perf_counter()
    BatchProgressReporter.log_benchmark_start(run.manifest.case_id, n_range, len(test_parameters))
    problem = run.problem()
    path = Path(results) if results else run.root / BENCHMARK_FILENAME
    initialize_benchmark_csv(path, problem.is_stokes)
    rows = speedup_study(
        problem,
        basis_set,
        test_parameters,
        n_range,
        on_row=lambda row: append_benchmark_row(path, row, problem.is_stokes),
    )
    BatchProgressReporter.log_benchmark_completion(rows, time.perf_counter() - start)
    logger.info(f"Successfully wrote {len(rows)} benchmark rows to {path}")
    return path, rows


def inspect_config(config: CaseConfig) -> Dict[str, Any]:
    """Sizes of a case config and the bookkeeping of its benchmark scale, without solving."""
    kind = _kind(config.case_id)
    summary: Dict[str, Any] = {
        "case_id": config.case_id.value,
        "scale": config.scale,
        "config_hash": config.config_hash(),
        "mesh": {"nx": config.mesh.nx, "ny": config.mesh.ny},
        "grid": {"final_time": config.time.final_time, "n_steps": config.time.n_steps},
        "n_max": config.reduction.n_max,
        "n": config.reduction.n,
        "reduced_dimension": reduced_dimension(kind, config.reduction.n),
        "test_size": config.reduction.test_size,
    }
    ref = config.benchmark_reference
    if ref is not None:
        summary["benchmark"] = {
            "n_steps": ref.n_steps,
            "state_dofs": ref.state_dofs,
            "pressure_dofs": ref.pressure_dofs,
            "full_dimension": full_order_dimension(ref.n_steps, ref.state_dofs, ref.state_dofs, ref.pressure_dofs or 0),
            "reduced_dimension": reduced_dimension(kind, ref.n),
            "n_max": ref.n_max,
            "n": ref.n,
            "test_size": ref.test_size,
        }
        if summary["benchmark"]["full_dimension"] != ref.full_dimension:
            logger.warning(
                f"Benchmark bookkeeping gives {summary['benchmark']['full_dimension']}, "
                f"config records {ref.full_dimension}"
            )
    return summary


def run_inspect(out_dir: Optional[str] = None, config_text: Optional[str] = None) -> Dict[str, Any]:
    """
    Summaries of a stored run and/or a case config.

    Raises:
        ValueError: If neither is given
        ArtifactError: If the stored run fails verification
    """
    if not out_dir and not config_text:
        raise ValueError("inspect needs --out, --config or both")
    summary: Dict[str, Any] = {}
    if out_dir:
        run = load_run(out_dir)
        summary["run"] = {
            "case_id": run.manifest.case_id,
            "seed": run.manifest.seed,
            "tool_version": run.manifest.tool_version,
            "grid": run.manifest.grid,
            "dimensions": run.manifest.dimensions,
            "bases": {name: meta["size"] for name, meta in run.manifest.bases.items()},
            "artifacts": len(run.manifest.artifacts),
            "timings": run.manifest.timings,
            "deficiency": dict(run.model.space.deficiency),
        }
        if not config_text:
            summary["config"] = inspect_config(run.config)
    if config_text:
        summary["config"] = inspect_config(resolve_case_config(config_text))
    return summary


def dry_run(config: CaseConfig, env: Env, n: Optional[int] = None) -> Dict[str, Any]:
    """Validate an offline run without solving; returns the config summary plus the run settings."""
    context = offline_context(config, ".", env, n)
    summary = inspect_config(config)
    summary["run"] = {"n": context.n, "n_keep": context.n_keep, "seed": context.seed, "workers": context.workers}
    return summary
