"""
Benchmark presets.

Each case comes in three scales:

* "benchmark": the published resolution and sizes (bookkeeping only on a desk);
* "desk": mesh and time grid scaled down so an offline run fits a workstation;
* "tiny": the smallest meshes that still exercise every code path, used by tests.

Only the mesh resolution, N_t, N_max, N and the test-set size differ between
scales.
"""

import logging
from typing import List, Tuple, Union

import numpy as np

from ..exceptions import ParameterError
from ..models.case import CaseId, case_parameter_box
from ..models.parameter import Parameter
from .schema import (
    BenchmarkReference,
    CaseConfig,
    DirichletSection,
    MeshSection,
    ObjectiveSection,
    ParameterSection,
    ReductionSection,
    TargetSection,
    TimeSection,
)

logger = logging.getLogger(__name__)

SCALES = ("desk", "benchmark", "tiny")

# (nx, ny, N_t, N_max, N, test size)
_GRAETZ_SCALES = {
    "benchmark": (84, 40, 30, 70, 35, 50),
    "desk": (40, 20, 10, 20, 10, 20),
    "tiny": (8, 5, 4, 6, 3, 3),
}
_STOKES_SCALES = {
    "benchmark": (23, 23, 20, 70, 25, 35),
    "desk": (10, 10, 10, 20, 10, 10),
    "tiny": (4, 4, 4, 5, 3, 3),
}

DEFAULT_SEED = 12345


def _check_scale(scale: str) -> None:
    if scale not in SCALES:
        raise ParameterError(f"Unknown preset scale '{scale}' (expected one of: {', '.join(SCALES)})")


def _parameter_section(case_id: CaseId, showcase: Tuple[float, ...]) -> ParameterSection:
    box = case_parameter_box(case_id)
    return ParameterSection(
        names=list(box.names),
        lower=list(box.lower),
        upper=list(box.upper),
        reference=list(box.reference),
        showcase=list(showcase),
    )


def _n_range(n: int) -> List[int]:
    return sorted(set(range(2, n + 1, 2)) | {n})


def graetz_case(scale: str = "desk") -> CaseConfig:
    """Graetz flow with boundary control on Γ_C, tracking on Ω₃."""
    _check_scale(scale)
    nx, ny, n_steps, n_max, n, test_size = _GRAETZ_SCALES[scale]
    return CaseConfig(
        case_id=CaseId.GRAETZ,
        scale=scale,
        parameters=_parameter_section(CaseId.GRAETZ, (1.0 / 12.0, 2.0, 2.5)),
        time=TimeSection(final_time=5.0, n_steps=n_steps),
        mesh=MeshSection(nx=nx, ny=ny),
        reduction=ReductionSection(n_max=n_max, n=n, test_size=test_size, seed=DEFAULT_SEED, n_range=_n_range(n)),
        objective=ObjectiveSection(alpha=1e-2, observation_domain="omega_3", control_region="gamma_c"),
        dirichlet=DirichletSection(values={"gamma_d": [1.0]}, priority=["gamma_d"]),
        target=TargetSection(kind="parameter_constant", component="mu_target"),
        benchmark_reference=BenchmarkReference(
            state_dofs=3487,
            n_steps=30,
            full_dimension=313830,
            n_max=70,
            n=35,
            reduced_dimension=175,
            test_size=50,
        ),
        notes=[
            "gamma_n is the outflow edge x = 2",
            "y_d is defined on the whole domain; only its restriction to omega_3 enters J",
        ],
    )


def stokes_cavity_case(scale: str = "desk") -> CaseConfig:
    """Time-dependent Stokes cavity with distributed control and a pulsating lid."""
    _check_scale(scale)
    nx, ny, n_steps, n_max, n, test_size = _STOKES_SCALES[scale]
    return CaseConfig(
        case_id=CaseId.STOKES_CAVITY,
        scale=scale,
        parameters=_parameter_section(CaseId.STOKES_CAVITY, (1e-2, 1.5)),
        time=TimeSection(final_time=1.0, n_steps=n_steps),
        mesh=MeshSection(nx=nx, ny=ny),
        reduction=ReductionSection(n_max=n_max, n=n, test_size=test_size, seed=DEFAULT_SEED, n_range=_n_range(n)),
        objective=ObjectiveSection(alpha=1e-2, observation_domain="omega", control_region="omega"),
        dirichlet=DirichletSection(
            values={"gamma_d": [0.0, 0.0], "gamma_in": [1.0, 0.0]},
            priority=["gamma_d", "gamma_in"],
            time_profile="inlet_cosine",
            profile_tag="gamma_in",
        ),
        target=TargetSection(kind="uncontrolled_flow", viscosity=1.0, lid_velocity=[1.0, 0.0]),
        benchmark_reference=BenchmarkReference(
            state_dofs=4554,
            pressure_dofs=591,
            n_steps=20,
            full_dimension=296880,
            n_max=70,
            n=25,
            reduced_dimension=325,
            test_size=35,
        ),
        notes=["parameter components are (mu_phys, mu_geo): viscosity first, horizontal stretch second"],
    )


def case_config(case_id: Union[CaseId, str], scale: str = "desk") -> CaseConfig:
    case = CaseId.parse(case_id)
    return graetz_case(scale) if case is CaseId.GRAETZ else stokes_cavity_case(scale)


def sample_parameters(
    config: CaseConfig, purpose: str, seed: Union[int, None] = None, count: Union[int, None] = None
) -> List[Parameter]:
    """
    Uniform parameter samples for training or testing.

    Training and test sets come from two independent streams spawned from
    the same seed, so changing the test size never changes the training set.

    Args:
        config: Case config
        purpose: "train" (N_max samples) or "test" (test_size samples)
        seed: Overrides the config seed
        count: Overrides the sample count; the first k samples never depend on it

    Raises:
        ParameterError: For an unknown purpose
    """
    streams = {"train": 0, "test": 1}
    if purpose not in streams:
        raise ParameterError(f"Unknown sample purpose '{purpose}' (expected train or test)")
    root = np.random.SeedSequence(config.reduction.seed if seed is None else seed)
    rng = np.random.default_rng(root.spawn(2)[streams[purpose]])
    if count is None:
        count = config.reduction.n_max if purpose == "train" else config.reduction.test_size
    samples = config.box().sample(rng, count)
    logger.debug(f"Sampled {count} {purpose} parameters for {config.case_id.value}")
    return samples
