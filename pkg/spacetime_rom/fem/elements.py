#!/usr/bin/env python3
"""
Lagrange shape functions on the reference triangle.

P2 local numbering: vertex functions 0, 1, 2, then edge functions on the
local edges (0,1), (1,2), (2,0).
"""

import numpy as np

from ..exceptions import AssemblyError

LOCAL_EDGES = ((0, 1), (1, 2), (2, 0))

_BARY_GRADIENTS = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])


def _barycentric(points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(points)
    return np.column_stack([1.0 - points[:, 0] - points[:, 1], points[:, 0], points[:, 1]])


def local_dof_count(order: int) -> int:
    if order == 1:
        return 3
    if order == 2:
        return 6
    raise AssemblyError(f"Unsupported element order {order} (expected 1 or 2)")


def shape_values(order: int, points: np.ndarray) -> np.ndarray:
    """(q, n_local) shape function values at reference points."""
    lam = _barycentric(points)
    if order == 1:
        return lam
    if order == 2:
        vertex = lam * (2.0 * lam - 1.0)
        edge = np.column_stack([4.0 * lam[:, a] * lam[:, b] for a, b in LOCAL_EDGES])
        return np.hstack([vertex, edge])
    raise AssemblyError(f"Unsupported element order {order} (expected 1 or 2)")


def shape_gradients(order: int, points: np.ndarray) -> np.ndarray:
    """(q, n_local, 2) reference gradients at reference points."""
    lam = _barycentric(points)
    q = lam.shape[0]
    if order == 1:
        return np.broadcast_to(_BARY_GRADIENTS, (q, 3, 2)).copy()
    if order == 2:
        grads = np.empty((q, 6, 2))
        for i in range(3):
            grads[:, i, :] = (4.0 * lam[:, i] - 1.0)[:, None] * _BARY_GRADIENTS[i]
        for k, (a, b) in enumerate(LOCAL_EDGES):
            grads[:, 3 + k, :] = 4.0 * (
                lam[:, a][:, None] * _BARY_GRADIENTS[b] + lam[:, b][:, None] * _BARY_GRADIENTS[a]
            )
        return grads
    raise AssemblyError(f"Unsupported element order {order} (expected 1 or 2)")


def edge_shape_values(order: int, t: np.ndarray) -> np.ndarray:
    """(q, n_edge_local) traces on an edge parametrized by t ∈ [0,1]: (start, end[, midpoint])."""
    t = np.asarray(t, dtype=float).ravel()
    if order == 1:
        return np.column_stack([1.0 - t, t])
    if order == 2:
        return np.column_stack([(1.0 - t) * (1.0 - 2.0 * t), t * (2.0 * t - 1.0), 4.0 * t * (1.0 - t)])
    raise AssemblyError(f"Unsupported element order {order} (expected 1 or 2)")
