#!/usr/bin/env python3
"""
Quadrature rules on the reference triangle and the unit interval.

Triangle weights sum to the reference area 1/2.
"""

from typing import NamedTuple

import numpy as np

from ..exceptions import AssemblyError


class QuadratureRule(NamedTuple):
    """
    Quadrature points and weights.

    Attributes:
        points: (q, d) reference coordinates
        weights: (q,) weights
        degree: Polynomial degree integrated exactly
    """

    points: np.ndarray
    weights: np.ndarray
    degree: int


_A1, _W1 = 0.44594849091596488632, 0.22338158967801146570
_A2, _W2 = 0.09157621350977074346, 0.10995174365532186764


def triangle_rule(degree: int) -> QuadratureRule:
    """
    Symmetric rule exact up to the requested degree (at most 4).

    Raises:
        AssemblyError: If degree > 4
    """
    if degree <= 2:
        points = np.array([[1.0 / 6.0, 1.0 / 6.0], [2.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 2.0 / 3.0]])
        return QuadratureRule(points, np.full(3, 1.0 / 6.0), 2)
    if degree <= 4:
        points = np.array(
            [
                [_A1, _A1],
                [1.0 - 2.0 * _A1, _A1],
                [_A1, 1.0 - 2.0 * _A1],
                [_A2, _A2],
                [1.0 - 2.0 * _A2, _A2],
                [_A2, 1.0 - 2.0 * _A2],
            ]
        )
        weights = 0.5 * np.array([_W1, _W1, _W1, _W2, _W2, _W2])
        return QuadratureRule(points, weights, 4)
    raise AssemblyError(f"No triangle quadrature rule of degree {degree} (maximum 4)")


def interval_rule(n_points: int) -> QuadratureRule:
    """Gauss–Legendre rule on [0, 1], exact to degree 2n−1."""
    x, w = np.polynomial.legendre.leggauss(n_points)
    return QuadratureRule(0.5 * (x + 1.0)[:, None], 0.5 * w, 2 * n_points - 1)
