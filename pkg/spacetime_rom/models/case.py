#!/usr/bin/env python3
"""
Case Identifier Models

This module contains the enumeration of the benchmark problems the package
knows how to build.
"""

from enum import Enum

from ..exceptions import MeshError
from .parameter import ParameterBox


class CaseId(str, Enum):
    """Benchmark problem identifiers."""

    GRAETZ = "graetz"
    STOKES_CAVITY = "stokes_cavity"

    @classmethod
    def parse(cls, value) -> "CaseId":
        """
        Convert a string or CaseId into a CaseId.

        Raises:
            MeshError: If the value does not name a known case
        """
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            known = ", ".join(c.value for c in cls)
            raise MeshError(f"Unknown case_id '{value}' (expected one of: {known})") from None


def case_parameter_box(case_id) -> ParameterBox:
    """Return the parameter box 𝒫 of a benchmark case."""
    return _PARAMETER_BOXES[CaseId.parse(case_id)]


# The geometric component is named mu_geo in both cases; the reference value 1
# gives identity maps.
_PARAMETER_BOXES = {
    CaseId.GRAETZ: ParameterBox(
        names=("mu_diff", "mu_target", "mu_geo"),
        lower=(1.0 / 20.0, 1.0, 0.5),
        upper=(1.0 / 6.0, 3.0, 3.0),
        reference=(1.0 / 12.0, 2.0, 1.0),
    ),
    CaseId.STOKES_CAVITY: ParameterBox(
        names=("mu_phys", "mu_geo"),
        lower=(1e-3, 0.5),
        upper=(1e-1, 2.5),
        reference=(1e-2, 1.0),
    ),
}
