#!/usr/bin/env python3
"""
Parameter-dependent coefficient functions θ(µ).

Every θ used by the benchmark decompositions is a monomial in named
parameter components, e.g. µ_diff·µ_geo⁻¹. Monomials are closed under
products, which the reduced objective needs for its output constant, and
they round-trip through a short text descriptor such as
"mu_diff*mu_geo^-1" ("1" for the constant function).
"""

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterable, Tuple

from ..exceptions import AffineError

if TYPE_CHECKING:
    from ..models.parameter import Parameter

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Theta:
    """
    Monomial coefficient function.

    Attributes:
        exponents: Sorted (component name, integer exponent) pairs, zero exponents removed
    """

    exponents: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def of(cls, powers: Dict[str, int]) -> "Theta":
        return cls(tuple(sorted((name, int(e)) for name, e in powers.items() if int(e) != 0)))

    @classmethod
    def constant(cls) -> "Theta":
        return cls(())

    @classmethod
    def parse(cls, descriptor: str) -> "Theta":
        """
        Parse a descriptor string.

        Raises:
            AffineError: If the descriptor is malformed
        """
        text = descriptor.strip()
        if text in ("", "1"):
            return cls.constant()
        powers: Dict[str, int] = {}
        for factor in text.split("*"):
            match = _FACTOR.match(factor.strip())
            if not match:
                raise AffineError(f"Malformed theta descriptor '{descriptor}' (factor '{factor}')")
            name, exponent = match.group(1), int(match.group(2) or 1)
            powers[name] = powers.get(name, 0) + exponent
        return cls.of(powers)

    @property
    def descriptor(self) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for name, e in self.exponents:
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    @property
    def components(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.exponents)

    def __call__(self, mu: "Parameter") -> float:
        value = 1.0
        for name, e in self.exponents:
            value *= mu[name] ** e
        return float(value)

    def __mul__(self, other: "Theta") -> "Theta":
        powers = dict(self.exponents)
        for name, e in other.exponents:
            powers[name] = powers.get(name, 0) + e
        return Theta.of(powers)

    def __str__(self) -> str:
        return self.descriptor


def evaluate_thetas(thetas: Iterable[Theta], mu: "Parameter") -> Tuple[float, ...]:
    return tuple(theta(mu) for theta in thetas)
