#!/usr/bin/env python3
"""
Exception hierarchy for the space-time reduced order modelling package.

Every error raised on purpose by the package derives from SpacetimeRomError so
the CLI can map it onto an exit code. Numerical failures share the
NumericalError base; input problems additionally derive from ValueError.
"""

from typing import Optional


class SpacetimeRomError(Exception):
    """Base class for all package errors."""


class NumericalError(SpacetimeRomError):
    """Base class for failures of a numerical stage."""


class ParameterError(SpacetimeRomError, ValueError):
    """Raised when a parameter point is malformed or outside its box."""


class MeshError(SpacetimeRomError, ValueError):
    """Raised for invalid mesh requests or unknown mesh tags."""


class AssemblyError(SpacetimeRomError, ValueError):
    """Raised when a finite element operator cannot be assembled."""


class AffineError(SpacetimeRomError, ValueError):
    """Raised for inconsistent affine families or theta descriptors."""


class KKTError(NumericalError, ValueError):
    """Raised when a space-time KKT system has incompatible blocks or data."""


class SingularSystemError(NumericalError):
    """
    Raised when a factorization of a saddle point system breaks down.

    Attributes:
        smallest_pivot: Smallest absolute pivot (or singular value) observed
        suspected_cause: Human-readable hint about the likely cause
    """

    def __init__(self, message: str, smallest_pivot: float = 0.0, suspected_cause: str = ""):
        self.smallest_pivot = smallest_pivot
        self.suspected_cause = suspected_cause
        detail = f"{message} (smallest pivot {smallest_pivot:.3e})"
        if suspected_cause:
            detail += f"; suspected cause: {suspected_cause}"
        super().__init__(detail)


class PODError(NumericalError):
    """Raised when a proper orthogonal decomposition cannot be computed."""


class ReductionError(NumericalError):
    """Raised when reduced spaces or reduced models cannot be built."""


class StageError(SpacetimeRomError):
    """
    Raised when an offline stage fails.

    Attributes:
        stage: Name of the failing stage
        sample_index: Index of the parameter sample being processed, if any
    """

    def __init__(self, stage: str, message: str, sample_index: Optional[int] = None):
        self.stage = stage
        self.sample_index = sample_index
        where = f"stage '{stage}'"
        if sample_index is not None:
            where += f" (sample {sample_index})"
        super().__init__(f"{where} failed: {message}")


class ArtifactError(SpacetimeRomError):
    """Raised when stored artifacts are missing, malformed or fail their checksum."""
