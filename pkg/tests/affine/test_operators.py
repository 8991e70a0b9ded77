"""
Unit tests for affine operators, affine vectors and the case decompositions.
"""

import unittest

import numpy as np
import scipy.sparse as sp

from spacetime_rom.affine.graetz import GRAETZ_TERM_COUNTS, graetz_affine_decomposition
from spacetime_rom.affine.operators import (
    AffineOperator,
    AffineVector,
    constant_vector,
    evaluate,
    quadratic_form,
    zero_vector,
)
from spacetime_rom.affine.stokes import STOKES_TERM_COUNTS, stokes_affine_decomposition
from spacetime_rom.exceptions import AffineError
from spacetime_rom.fem.mesh import build_structured_mesh
from spacetime_rom.fem.spaces import FunctionSpace
from spacetime_rom.models.case import CaseId
from spacetime_rom.models.parameter import Parameter


def _mu(geo=2.0, diff=0.5):
    return Parameter(("mu_diff", "mu_geo"), (diff, geo))


class TestAffineOperator(unittest.TestCase):
    """Test cases for AffineOperator."""

    def setUp(self):
        self.a = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, 2.0]]))
        self.b = sp.csr_matrix(np.array([[0.0, 3.0], [0.0, 0.0]]))
        self.op = AffineOperator([("mu_diff", self.a), ("mu_geo", self.b)])

    def test_evaluate(self):
        expected = 0.5 * self.a + 2.0 * self.b
        self.assertLess(abs(self.op.evaluate(_mu()) - expected).max(), 1e-15)
        self.assertLess(abs(evaluate(self.op, _mu()) - expected).max(), 1e-15)
        np.testing.assert_array_equal(self.op.coefficients(_mu()), [0.5, 2.0])

    def test_unified_pattern(self):
        self.assertEqual(self.op.nnz, 3)
        self.assertEqual(self.op.evaluate(_mu()).nnz, 3)

    def test_equal_descriptors_merge(self):
        op = AffineOperator([("mu_geo*mu_diff", self.a), ("mu_diff*mu_geo", self.a)])
        self.assertEqual(op.q, 1)
        self.assertLess(abs(op.term("mu_diff*mu_geo") - 2 * self.a).max(), 1e-15)

    def test_term_lookup(self):
        self.assertLess(abs(self.op.term("mu_geo") - self.b).max(), 1e-15)
        with self.assertRaises(AffineError):
            self.op.term("mu_target")

    def test_shape_checks(self):
        with self.assertRaises(AffineError):
            AffineOperator([("1", self.a), ("mu_geo", sp.identity(3))])
        with self.assertRaises(AffineError):
            AffineOperator([])
        empty = AffineOperator([], shape=(2, 2))
        self.assertEqual(empty.q, 0)
        self.assertEqual(empty.evaluate(_mu()).nnz, 0)
        with self.assertRaises(AffineError):
            self.op + AffineOperator([("1", sp.identity(3))])

    def test_restrict(self):
        sub = self.op.restrict(rows=np.array([0]), cols=np.array([1]))
        self.assertEqual(sub.shape, (1, 1))
        self.assertAlmostEqual(sub.evaluate(_mu())[0, 0], 6.0)

    def test_sum_and_scaling(self):
        total = self.op + AffineOperator([("mu_geo", self.b)])
        self.assertEqual(total.q, 2)
        self.assertAlmostEqual(total.evaluate(_mu())[0, 1], 12.0)
        self.assertAlmostEqual(self.op.scaled(-2.0).evaluate(_mu())[1, 1], -2.0)

    def test_apply(self):
        vector = self.op.apply(np.array([1.0, 1.0]))
        np.testing.assert_allclose(vector.evaluate(_mu()), self.op.evaluate(_mu()) @ np.ones(2))


class TestAffineVector(unittest.TestCase):
    """Test cases for AffineVector and the quadratic forms."""

    def test_evaluate_and_arithmetic(self):
        v = AffineVector([("mu_geo", np.array([1.0, 2.0])), ("1", np.array([0.0, 1.0]))])
        np.testing.assert_allclose(v.evaluate(_mu(geo=3.0)), [3.0, 7.0])
        np.testing.assert_allclose((v - v).evaluate(_mu()), 0.0)
        np.testing.assert_allclose((-v).evaluate(_mu(geo=1.0)), [-1.0, -3.0])
        np.testing.assert_allclose(v.restrict(np.array([1])).evaluate(_mu(geo=1.0)), [3.0])

    def test_constant_and_zero(self):
        np.testing.assert_array_equal(constant_vector(np.ones(3)).evaluate(_mu()), 1.0)
        zero = zero_vector((4,))
        self.assertEqual(zero.q, 0)
        np.testing.assert_array_equal(zero.evaluate(_mu()), np.zeros(4))

    def test_shape_mismatch(self):
        with self.assertRaises(AffineError):
            AffineVector([("1", np.ones(2)), ("mu_geo", np.ones(3))])
        with self.assertRaises(AffineError):
            AffineVector([])

    def test_quadratic_form_merges_monomials(self):
        left = AffineVector([("mu_geo", np.array([1.0, 0.0])), ("1", np.array([0.0, 1.0]))])
        operator = AffineOperator([("mu_geo^-1", sp.identity(2, format="csr"))])
        form = quadratic_form(left, operator, left, lambda a, m, b: float(a @ (m @ b)))
        self.assertEqual(form.shape, ())
        self.assertEqual(set(form.descriptors), {"mu_geo", "1", "mu_geo^-1"})
        mu = _mu(geo=2.0)
        v = left.evaluate(mu)
        self.assertAlmostEqual(float(form.evaluate(mu)), float(v @ v) / 2.0)


class TestCaseDecompositions(unittest.TestCase):
    """Test cases for the documented term counts and shapes."""

    def test_graetz_families(self):
        mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        space = FunctionSpace(mesh, order=1)
        ops = graetz_affine_decomposition(mesh, {"state": space})
        counts = {
            "mass": ops.mass.q,
            "operator": ops.operator.q,
            "observation": ops.observation.q,
            "control_coupling": ops.control_coupling.q,
            "control_mass": ops.control_mass.q,
            "target": ops.target.q,
        }
        self.assertEqual(counts, GRAETZ_TERM_COUNTS)
        self.assertEqual(ops.term_counts, GRAETZ_TERM_COUNTS)
        self.assertIsNone(ops.constraint)
        self.assertEqual(ops.step_size, space.dimension)
        # Γ_C: two walls of length 1 with 4 cells each
        self.assertEqual(ops.control_size, 10)
        self.assertEqual(ops.control_coupling.shape, (space.dimension, 10))
        self.assertEqual(
            set(ops.operator.descriptors), {"mu_diff", "mu_diff*mu_geo^-1", "mu_diff*mu_geo", "1"}
        )

    def test_graetz_restriction(self):
        mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        ops = graetz_affine_decomposition(mesh, {"state": FunctionSpace(mesh, order=1)})
        free = np.arange(10, 30)
        restricted = ops.restrict(free)
        self.assertEqual(restricted.mass.shape, (20, 20))
        self.assertEqual(restricted.control_coupling.shape, (20, ops.control_size))
        self.assertEqual(restricted.target.shape, (20,))

    def test_graetz_missing_space(self):
        mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        with self.assertRaises(AffineError):
            graetz_affine_decomposition(mesh, {})
        cavity = build_structured_mesh(CaseId.STOKES_CAVITY, 4, 4)
        with self.assertRaises(AffineError):
            graetz_affine_decomposition(cavity, {"state": FunctionSpace(cavity, order=1)})

    def test_stokes_families(self):
        mesh = build_structured_mesh(CaseId.STOKES_CAVITY, 4, 4)
        spaces = {
            "velocity": FunctionSpace(mesh, order=2, components=2),
            "pressure": FunctionSpace(mesh, order=1),
        }
        ops = stokes_affine_decomposition(mesh, spaces)
        counts = {
            "mass": ops.mass.q,
            "operator": ops.operator.q,
            "constraint": ops.constraint.q,
            "observation": ops.observation.q,
            "control_coupling": ops.control_coupling.q,
            "control_mass": ops.control_mass.q,
            "target": 0,
        }
        self.assertEqual(counts, STOKES_TERM_COUNTS)
        self.assertIsNone(ops.target)
        n_v, n_p = spaces["velocity"].dimension, spaces["pressure"].dimension
        self.assertEqual(ops.step_size, n_v + n_p + 1)
        self.assertEqual(ops.control_size, n_v)

    def test_stokes_missing_pressure(self):
        mesh = build_structured_mesh(CaseId.STOKES_CAVITY, 4, 4)
        with self.assertRaises(AffineError):
            stokes_affine_decomposition(mesh, {"velocity": FunctionSpace(mesh, order=2, components=2)})


if __name__ == "__main__":
    unittest.main()
