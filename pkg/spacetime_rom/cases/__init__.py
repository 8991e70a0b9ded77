"""
Benchmark cases: versioned case configs, the Graetz and Stokes cavity
presets, seeded parameter sampling and the assembled CaseProblem.
"""

from .presets import SCALES, case_config, graetz_case, sample_parameters, stokes_cavity_case
from .problem import CaseProblem
from .schema import CaseConfig, load_case_config

__all__ = [
    "CaseConfig",
    "load_case_config",
    "SCALES",
    "graetz_case",
    "stokes_cavity_case",
    "case_config",
    "sample_parameters",
    "CaseProblem",
]
