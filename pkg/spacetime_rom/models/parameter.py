#!/usr/bin/env python3
"""
Parameter Models

This module contains the parameter point and parameter box types. Parameter
components are always addressed by name; positional order only matters for
the CLI, where it follows the order of the box.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from ..exceptions import ParameterError


@dataclass(frozen=True)
class Parameter:
    """
    A point µ in a parameter box.

    Attributes:
        names: Component names, e.g. ("mu_diff", "mu_target", "mu_geo")
        values: Component values in the same order as names
    """

    names: Tuple[str, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ParameterError(
                f"Parameter has {len(self.names)} names but {len(self.values)} values"
            )

    def __getitem__(self, name: str) -> float:
        try:
            return self.values[self.names.index(name)]
        except ValueError:
            raise ParameterError(
                f"Parameter has no component '{name}' (components: {', '.join(self.names)})"
            ) from None

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.names, self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def label(self) -> str:
        """Compact text label, stable across runs."""
        return ",".join(f"{n}={v!r}" for n, v in zip(self.names, self.values))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float]) -> "Parameter":
        names = tuple(mapping.keys())
        return cls(names, tuple(float(mapping[n]) for n in names))


@dataclass(frozen=True)
class ParameterBox:
    """
    Axis-aligned parameter domain 𝒫.

    Attributes:
        names: Component names
        lower: Lower bounds per component
        upper: Upper bounds per component
        reference: Reference parameter (identity geometric maps)
    """

    names: Tuple[str, ...]
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    reference: Tuple[float, ...]

    def __post_init__(self):
        n = len(self.names)
        if not (len(self.lower) == len(self.upper) == len(self.reference) == n):
            raise ParameterError("ParameterBox bounds do not match its component names")
        for name, lo, hi in zip(self.names, self.lower, self.upper):
            if not lo < hi:
                raise ParameterError(f"Empty parameter range for '{name}': [{lo}, {hi}]")

    @property
    def dimension(self) -> int:
        return len(self.names)

    def parameter(self, values: Union[Sequence[float], Mapping[str, float]]) -> Parameter:
        """
        Build a Parameter from positional values or a name mapping.

        Raises:
            ParameterError: If components are missing or unknown
        """
        if isinstance(values, Mapping):
            unknown = set(values) - set(self.names)
            if unknown:
                raise ParameterError(f"Unknown parameter components: {', '.join(sorted(unknown))}")
            missing = [n for n in self.names if n not in values]
            if missing:
                raise ParameterError(f"Missing parameter components: {', '.join(missing)}")
            ordered = tuple(float(values[n]) for n in self.names)
        else:
            ordered = tuple(float(v) for v in values)
            if len(ordered) != self.dimension:
                raise ParameterError(
                    f"Expected {self.dimension} parameter values ({', '.join(self.names)}), "
                    f"got {len(ordered)}"
                )
        return Parameter(self.names, ordered)

    def reference_parameter(self) -> Parameter:
        return Parameter(self.names, tuple(self.reference))

    def contains(self, mu: Parameter, tol: float = 1e-12) -> bool:
        try:
            values = [mu[n] for n in self.names]
        except ParameterError:
            return False
        return all(lo - tol <= v <= hi + tol for v, lo, hi in zip(values, self.lower, self.upper))

    def validate(self, mu: Parameter) -> Parameter:
        """
        Check that mu lies inside the box.

        Returns:
            The same parameter

        Raises:
            ParameterError: Naming the first offending component
        """
        for name, lo, hi in zip(self.names, self.lower, self.upper):
            value = mu[name]
            if not (lo - 1e-12 <= value <= hi + 1e-12):
                raise ParameterError(
                    f"Parameter component {name}={value!r} outside box [{lo!r}, {hi!r}]"
                )
        return mu

    def sample(self, rng: np.random.Generator, count: int) -> List[Parameter]:
        """Draw count independent uniform samples."""
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        draws = rng.uniform(size=(count, self.dimension))
        return [Parameter(self.names, tuple(float(v) for v in lo + (hi - lo) * row)) for row in draws]


def parse_parameter_text(text: str, box: ParameterBox) -> Parameter:
    """
    Parse a CLI parameter string.

    Accepts either positional values "0.083,2,2.5" or named values
    "mu_diff=0.083,mu_target=2,mu_geo=2.5".
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ParameterError("Empty parameter text")
    if all("=" in item for item in items):
        mapping = {}
        for item in items:
            key, value = item.split("=", 1)
            mapping[key.strip()] = _parse_number(value)
        return box.parameter(mapping)
    if any("=" in item for item in items):
        raise ParameterError(f"Mixed positional and named values in '{text}'")
    return box.parameter([_parse_number(item) for item in items])


def _parse_number(text: str) -> float:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return float(num) / float(den)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"Invalid parameter value '{text}'") from None


def parameters_to_matrix(parameters: Iterable[Parameter]) -> np.ndarray:
    return np.array([p.values for p in parameters], dtype=float)
