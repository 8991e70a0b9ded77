"""
Case configuration schema using Pydantic.

A CaseConfig is the complete, versioned description of one benchmark run:
parameter box, time grid, mesh resolution, reduction sizes, objective data,
Dirichlet data and desired state. Configs are stored as indented JSON text
files and reload losslessly.
"""

import hashlib
import json
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..constants import CASE_SCHEMA_VERSION
from ..exceptions import ParameterError
from ..models.case import CaseId
from ..models.fields import TimeGrid
from ..models.parameter import ParameterBox

_STRICT = {"validate_assignment": True, "extra": "forbid"}


class ParameterSection(BaseModel):
    """Parameter box 𝒫, named component by component."""

    names: List[str] = Field(..., min_length=1, description="Component names, e.g. mu_diff")
    lower: List[float] = Field(..., description="Lower bounds")
    upper: List[float] = Field(..., description="Upper bounds")
    reference: List[float] = Field(..., description="Reference parameter (identity geometric maps)")
    showcase: List[float] = Field(default_factory=list, description="Parameter used for showcase runs")
    distribution: Literal["uniform"] = "uniform"

    model_config = _STRICT

    @model_validator(mode="after")
    def check_box(self) -> "ParameterSection":
        n = len(self.names)
        for label in ("lower", "upper", "reference"):
            if len(getattr(self, label)) != n:
                raise ValueError(f"parameters.{label} needs {n} entries, got {len(getattr(self, label))}")
        if self.showcase and len(self.showcase) != n:
            raise ValueError(f"parameters.showcase needs {n} entries, got {len(self.showcase)}")
        for name, lo, hi in zip(self.names, self.lower, self.upper):
            if not lo < hi:
                raise ValueError(f"parameter box is empty for {name}: [{lo}, {hi}]")
        return self


class TimeSection(BaseModel):
    final_time: float = Field(..., gt=0.0, description="T")
    n_steps: int = Field(..., ge=1, description="N_t")

    model_config = _STRICT


class MeshSection(BaseModel):
    nx: int = Field(..., ge=2)
    ny: int = Field(..., ge=2)

    model_config = _STRICT


class ReductionSection(BaseModel):
    """Snapshot and basis sizes."""

    n_max: int = Field(..., ge=1, description="Training snapshots N_max")
    n: int = Field(..., ge=1, description="POD modes retained per role")
    test_size: int = Field(..., ge=1, description="Test parameters for error and speedup studies")
    seed: int = Field(0, ge=0, description="Seed of the training and test samplers")
    n_range: List[int] = Field(default_factory=list, description="N values of the benchmark sweep")

    model_config = _STRICT

    @model_validator(mode="after")
    def check_sizes(self) -> "ReductionSection":
        if self.n > self.n_max:
            raise ValueError(f"reduction.n={self.n} exceeds reduction.n_max={self.n_max}")
        too_large = [n for n in self.n_range if n < 1 or n > self.n_max]
        if too_large:
            raise ValueError(f"reduction.n_range values outside [1, {self.n_max}]: {too_large}")
        return self


class ObjectiveSection(BaseModel):
    alpha: float = Field(..., gt=0.0, description="Control regularization α")
    observation_domain: str = Field(..., description="Subdomain tag of the tracking term")
    control_region: str = Field(..., description="Boundary tag or subdomain where the control acts")

    model_config = _STRICT


class DirichletSection(BaseModel):
    """Dirichlet data per boundary tag, with the priority that decides shared dofs."""

    values: Dict[str, List[float]] = Field(..., description="Tag → value per component")
    priority: List[str] = Field(default_factory=list, description="Tags from highest to lowest priority")
    time_profile: Literal["constant", "inlet_cosine"] = "constant"
    profile_tag: Optional[str] = Field(None, description="Tag whose data follows the time profile")

    model_config = _STRICT

    @model_validator(mode="after")
    def check_tags(self) -> "DirichletSection":
        unknown = [tag for tag in self.priority if tag not in self.values]
        if unknown:
            raise ValueError(f"dirichlet.priority names tags without data: {unknown}")
        if self.profile_tag is not None and self.profile_tag not in self.values:
            raise ValueError(f"dirichlet.profile_tag '{self.profile_tag}' has no data")
        return self


class TargetSection(BaseModel):
    """
    Desired state descriptor.

    kind "parameter_constant": y_d ≡ the named parameter component everywhere.
    kind "uncontrolled_flow": y_d is the uncontrolled Stokes flow with the
    given viscosity and lid velocity on the reference domain.
    """

    kind: Literal["parameter_constant", "uncontrolled_flow"]
    component: Optional[str] = None
    viscosity: float = Field(1.0, gt=0.0)
    lid_velocity: List[float] = Field(default_factory=lambda: [1.0, 0.0])

    model_config = _STRICT


class BenchmarkReference(BaseModel):
    """Published full-scale bookkeeping reproduced by `inspect` without solving."""

    state_dofs: int
    pressure_dofs: Optional[int] = None
    n_steps: int
    full_dimension: int
    n_max: int
    n: int
    reduced_dimension: int
    test_size: int

    model_config = _STRICT


class CaseConfig(BaseModel):
    """
    Complete configuration of one benchmark case.

    Raises:
        pydantic.ValidationError: On construction with invalid data
    """

    schema_version: Literal["spacetime-rom/case-v1"] = CASE_SCHEMA_VERSION
    case_id: CaseId
    scale: str = "custom"
    parameters: ParameterSection
    time: TimeSection
    mesh: MeshSection
    reduction: ReductionSection
    objective: ObjectiveSection
    dirichlet: DirichletSection
    target: TargetSection
    benchmark_reference: Optional[BenchmarkReference] = None
    notes: List[str] = Field(default_factory=list)

    model_config = _STRICT

    @field_validator("case_id", mode="before")
    @classmethod
    def parse_case(cls, v):
        return CaseId.parse(v)

    @model_validator(mode="after")
    def check_reference(self) -> "CaseConfig":
        box = self.box()
        try:
            box.validate(box.reference_parameter())
            if self.parameters.showcase:
                box.validate(box.parameter(self.parameters.showcase))
        except ParameterError as e:
            raise ValueError(str(e)) from None
        if self.target.kind == "parameter_constant" and self.target.component not in self.parameters.names:
            raise ValueError(f"target.component '{self.target.component}' is not a parameter component")
        return self

    def box(self) -> ParameterBox:
        p = self.parameters
        return ParameterBox(tuple(p.names), tuple(p.lower), tuple(p.upper), tuple(p.reference))

    def grid(self) -> TimeGrid:
        return TimeGrid(self.time.final_time, self.time.n_steps)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"

    def config_hash(self) -> str:
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @classmethod
    def from_json(cls, text: str) -> "CaseConfig":
        return cls.model_validate_json(text)

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        return path


def load_case_config(path: Union[str, Path]) -> CaseConfig:
    """
    Read a case config file.

    Raises:
        ValueError: If the file is missing or does not validate; the message
            lists one line per offending field
    """
    path = Path(path)
    if not path.is_file():
        raise ValueError(f"Case config file not found: {path}")
    try:
        return CaseConfig.from_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        errors = [f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in e.errors()]
        raise ValueError(
            f"Case config {path} failed validation:\n" + "\n".join(f"  - {err}" for err in errors)
        ) from e
