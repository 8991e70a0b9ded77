#!/usr/bin/env python3
"""
Affine parametric operators and vectors.

An AffineOperator stores Σ_q θ_q(µ)·A_q with parameter-independent sparse
matrices A_q. Terms sharing a θ descriptor are merged on construction and
the sparsity patterns of all terms are unified, so evaluating at a
parameter is a single dot product over the stored data arrays.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..exceptions import AffineError
from ..models.parameter import Parameter
from .theta import Theta

logger = logging.getLogger(__name__)

ThetaLike = Union[Theta, str]


def _as_theta(theta: ThetaLike) -> Theta:
    return theta if isinstance(theta, Theta) else Theta.parse(theta)


class AffineOperator:
    """
    Parameter-separable sparse operator.

    Args:
        terms: (theta, matrix) pairs; theta is a Theta or a descriptor string
        shape: Required when terms is empty

    Raises:
        AffineError: If the term shapes differ
    """

    def __init__(
        self,
        terms: Iterable[Tuple[ThetaLike, sp.spmatrix]],
        shape: Optional[Tuple[int, int]] = None,
    ):
        merged: "OrderedDict[str, Tuple[Theta, sp.csr_matrix]]" = OrderedDict()
        for theta, matrix in terms:
            theta = _as_theta(theta)
            matrix = sp.csr_matrix(matrix, dtype=float, copy=True)
            matrix.sum_duplicates()
            if shape is None:
                shape = matrix.shape
            elif matrix.shape != tuple(shape):
                raise AffineError(
                    f"Affine term '{theta}' has shape {matrix.shape}, expected {tuple(shape)}"
                )
            if theta.descriptor in merged:
                merged[theta.descriptor] = (theta, merged[theta.descriptor][1] + matrix)
            else:
                merged[theta.descriptor] = (theta, matrix)
        if shape is None:
            raise AffineError("An AffineOperator without terms needs an explicit shape")
        self.shape: Tuple[int, int] = (int(shape[0]), int(shape[1]))
        self.thetas: Tuple[Theta, ...] = tuple(theta for theta, _ in merged.values())
        self._unify([matrix for _, matrix in merged.values()])

    def _unify(self, matrices: List[sp.csr_matrix]) -> None:
        pattern = sp.csr_matrix(self.shape)
        for matrix in matrices:
            pattern = pattern + abs(matrix)
        pattern = sp.csr_matrix(pattern)
        pattern.sum_duplicates()
        pattern.sort_indices()
        self._indices = pattern.indices.copy()
        self._indptr = pattern.indptr.copy()
        rows = np.repeat(np.arange(self.shape[0]), np.diff(pattern.indptr))
        keys = rows.astype(np.int64) * self.shape[1] + pattern.indices
        data = np.zeros((len(matrices), pattern.nnz))
        for q, matrix in enumerate(matrices):
            coo = matrix.tocoo()
            keep = coo.data != 0.0
            term_keys = coo.row[keep].astype(np.int64) * self.shape[1] + coo.col[keep]
            data[q, np.searchsorted(keys, term_keys)] = coo.data[keep]
        self._data = data

    @property
    def q(self) -> int:
        """Number of affine terms Q."""
        return len(self.thetas)

    @property
    def descriptors(self) -> Tuple[str, ...]:
        return tuple(theta.descriptor for theta in self.thetas)

    @property
    def nnz(self) -> int:
        return int(self._indices.size)

    def _matrix_from(self, data: np.ndarray) -> sp.csr_matrix:
        return sp.csr_matrix((data, self._indices.copy(), self._indptr.copy()), shape=self.shape)

    def term(self, descriptor: ThetaLike) -> sp.csr_matrix:
        """
        Matrix of one term.

        Raises:
            AffineError: If no term has that descriptor
        """
        key = _as_theta(descriptor).descriptor
        try:
            q = self.descriptors.index(key)
        except ValueError:
            raise AffineError(
                f"No affine term '{key}' (terms: {', '.join(self.descriptors) or 'none'})"
            ) from None
        return self._matrix_from(self._data[q])

    def terms(self) -> List[Tuple[Theta, sp.csr_matrix]]:
        return [(theta, self._matrix_from(self._data[q])) for q, theta in enumerate(self.thetas)]

    def coefficients(self, mu: Parameter) -> np.ndarray:
        return np.array([theta(mu) for theta in self.thetas], dtype=float)

    def evaluate(self, mu: Parameter) -> sp.csr_matrix:
        """Σ_q θ_q(µ)·A_q on the unified sparsity pattern."""
        if self.q == 0:
            return sp.csr_matrix(self.shape)
        return self._matrix_from(self.coefficients(mu) @ self._data)

    def restrict(self, rows: Optional[np.ndarray] = None, cols: Optional[np.ndarray] = None) -> "AffineOperator":
        """Sub-operator on the given row and column index sets."""
        def take(matrix: sp.csr_matrix) -> sp.csr_matrix:
            if rows is not None:
                matrix = matrix[np.asarray(rows), :]
            if cols is not None:
                matrix = matrix[:, np.asarray(cols)]
            return matrix

        shape = (
            self.shape[0] if rows is None else len(rows),
            self.shape[1] if cols is None else len(cols),
        )
        return AffineOperator([(theta, take(matrix)) for theta, matrix in self.terms()], shape=shape)

    def apply(self, vectors: np.ndarray) -> "AffineVector":
        """The affine vector Σ_q θ_q(µ)·(A_q v); v may be a vector or a matrix of columns."""
        vectors = np.asarray(vectors, dtype=float)
        return AffineVector([(theta, np.asarray(matrix @ vectors)) for theta, matrix in self.terms()])

    def map(
        self,
        function: Callable[[sp.csr_matrix], sp.spmatrix],
        shape: Optional[Tuple[int, int]] = None,
    ) -> "AffineOperator":
        """New operator with function applied to every term matrix; θ's are kept."""
        terms = [(theta, function(matrix)) for theta, matrix in self.terms()]
        if not terms and shape is None:
            raise AffineError("Mapping an empty AffineOperator needs the resulting shape")
        return AffineOperator(terms, shape=shape)

    def scaled(self, factor: float) -> "AffineOperator":
        return self.map(lambda matrix: factor * matrix, shape=self.shape)

    def __add__(self, other: "AffineOperator") -> "AffineOperator":
        if self.shape != other.shape:
            raise AffineError(f"Cannot add affine operators of shapes {self.shape} and {other.shape}")
        return AffineOperator(self.terms() + other.terms(), shape=self.shape)

    def __repr__(self) -> str:
        return f"AffineOperator(shape={self.shape}, terms=[{', '.join(self.descriptors)}])"


def evaluate(aff: AffineOperator, mu: Parameter) -> sp.csr_matrix:
    """Evaluate an affine operator at a parameter."""
    return aff.evaluate(mu)


class AffineVector:
    """
    Parameter-separable array Σ_q θ_q(µ)·v_q.

    The term arrays share one shape; scalars (shape ()) are allowed and are
    used for output constants.
    """

    def __init__(self, terms: Iterable[Tuple[ThetaLike, np.ndarray]], shape: Optional[Tuple[int, ...]] = None):
        merged: "OrderedDict[str, Tuple[Theta, np.ndarray]]" = OrderedDict()
        for theta, values in terms:
            theta = _as_theta(theta)
            values = np.array(values, dtype=float)
            if shape is None:
                shape = values.shape
            elif values.shape != tuple(shape):
                raise AffineError(
                    f"Affine vector term '{theta}' has shape {values.shape}, expected {tuple(shape)}"
                )
            if theta.descriptor in merged:
                merged[theta.descriptor] = (theta, merged[theta.descriptor][1] + values)
            else:
                merged[theta.descriptor] = (theta, values)
        if shape is None:
            raise AffineError("An AffineVector without terms needs an explicit shape")
        self.shape: Tuple[int, ...] = tuple(int(s) for s in shape)
        self.thetas: Tuple[Theta, ...] = tuple(theta for theta, _ in merged.values())
        self._values: Tuple[np.ndarray, ...] = tuple(values for _, values in merged.values())

    @property
    def q(self) -> int:
        return len(self.thetas)

    @property
    def descriptors(self) -> Tuple[str, ...]:
        return tuple(theta.descriptor for theta in self.thetas)

    def terms(self) -> List[Tuple[Theta, np.ndarray]]:
        return list(zip(self.thetas, self._values))

    def term(self, descriptor: ThetaLike) -> np.ndarray:
        key = _as_theta(descriptor).descriptor
        for theta, values in self.terms():
            if theta.descriptor == key:
                return values
        raise AffineError(f"No affine vector term '{key}' (terms: {', '.join(self.descriptors) or 'none'})")

    def evaluate(self, mu: Parameter) -> np.ndarray:
        out = np.zeros(self.shape)
        for theta, values in self.terms():
            out = out + theta(mu) * values
        return out

    def map(self, function: Callable[[np.ndarray], np.ndarray], shape: Optional[Tuple[int, ...]] = None) -> "AffineVector":
        terms = [(theta, function(values)) for theta, values in self.terms()]
        if not terms and shape is None:
            raise AffineError("Mapping an empty AffineVector needs the resulting shape")
        return AffineVector(terms, shape=shape)

    def restrict(self, indices: np.ndarray) -> "AffineVector":
        """Keep the given entries along the first axis."""
        indices = np.asarray(indices)
        shape = (len(indices),) + self.shape[1:]
        return AffineVector([(theta, values[indices]) for theta, values in self.terms()], shape=shape)

    def scaled(self, factor: float) -> "AffineVector":
        return self.map(lambda values: factor * values, shape=self.shape)

    def __add__(self, other: "AffineVector") -> "AffineVector":
        if self.shape != other.shape:
            raise AffineError(f"Cannot add affine vectors of shapes {self.shape} and {other.shape}")
        return AffineVector(self.terms() + other.terms(), shape=self.shape)

    def __neg__(self) -> "AffineVector":
        return self.scaled(-1.0)

    def __sub__(self, other: "AffineVector") -> "AffineVector":
        return self + (-other)

    def __repr__(self) -> str:
        return f"AffineVector(shape={self.shape}, terms=[{', '.join(self.descriptors)}])"


def constant_vector(values: np.ndarray) -> AffineVector:
    """AffineVector with the single term θ ≡ 1."""
    return AffineVector([(Theta.constant(), values)])


def zero_vector(shape: Sequence[int]) -> AffineVector:
    return AffineVector([], shape=tuple(shape))


def quadratic_form(
    left: AffineVector,
    operator: AffineOperator,
    right: AffineVector,
    contract: Callable[[np.ndarray, sp.csr_matrix, np.ndarray], float],
) -> AffineVector:
    """
    Affine scalar Σ θ_a θ_q θ_b · contract(v_a, A_q, w_b).

    θ products are merged by descriptor, so the result has one term per
    distinct monomial.
    """
    terms = []
    for theta_a, va in left.terms():
        for theta_q, matrix in operator.terms():
            for theta_b, wb in right.terms():
                terms.append((theta_a * theta_q * theta_b, np.array(contract(va, matrix, wb))))
    return AffineVector(terms, shape=())


@dataclass(frozen=True, eq=False)
class CaseOperators:
    """
    Step-level affine families of a benchmark problem on the full dof set.

    Attributes:
        mass: History coupling M(µ), (n_step, n_step)
        operator: Δt-scaled spatial operator D_a(µ), (n_step, n_step)
        constraint: Unscaled constraint rows, (n_step, n_step), or None
        observation: Observation mass M_obs(µ), (n_step, n_step)
        control_coupling: D_c(µ), (n_step, n_control)
        control_mass: M_u(µ), (n_control, n_control)
        target: Desired state y_d(µ) on the step dofs, or None when supplied per time step
        spaces: Function spaces by name
        control_dofs: Indices of the control dofs in their space
        term_counts: Documented Q per family
    """

    mass: AffineOperator
    operator: AffineOperator
    constraint: Optional[AffineOperator]
    observation: AffineOperator
    control_coupling: AffineOperator
    control_mass: AffineOperator
    target: Optional[AffineVector]
    spaces: Dict[str, object]
    control_dofs: np.ndarray
    term_counts: Dict[str, int]

    @property
    def step_size(self) -> int:
        return self.mass.shape[0]

    @property
    def control_size(self) -> int:
        return self.control_mass.shape[0]

    def restrict(self, free: np.ndarray) -> "CaseOperators":
        """Families on the free step dofs; control columns are kept."""
        free = np.asarray(free)
        return CaseOperators(
            mass=self.mass.restrict(free, free),
            operator=self.operator.restrict(free, free),
            constraint=None if self.constraint is None else self.constraint.restrict(free, free),
            observation=self.observation.restrict(free, free),
            control_coupling=self.control_coupling.restrict(rows=free),
            control_mass=self.control_mass,
            target=None if self.target is None else self.target.restrict(free),
            spaces=self.spaces,
            control_dofs=self.control_dofs,
            term_counts=self.term_counts,
        )
