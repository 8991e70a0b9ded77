"""
Unit tests for benchmark problem assembly.

The free-dof KKT system built from the affine families must agree with the
one assembled directly at a parameter, and the lifted fields must carry
the Dirichlet data.
"""

import unittest

import numpy as np

from spacetime_rom.cases.loads import inlet_profile
from spacetime_rom.cases.presets import case_config
from spacetime_rom.cases.problem import CaseProblem
from spacetime_rom.exceptions import ParameterError
from spacetime_rom.fem.lifting import dirichlet_dofs
from spacetime_rom.models.fields import VariableRole
from spacetime_rom.models.parameter import Parameter
from tests.helpers.oracles import tiny_offline


class TestGraetzProblem(unittest.TestCase):
    """Test cases for the tiny Graetz problem."""

    @classmethod
    def setUpClass(cls):
        cls.problem = CaseProblem(case_config("graetz", "tiny"))
        cls.mu = cls.problem.parameter([0.1, 2.5, 1.7])

    def test_dimensions(self):
        problem = self.problem
        self.assertEqual(problem.n_free, 54 - 14)
        self.assertEqual(problem.control_size, 10)
        self.assertEqual(problem.full_dimension, 4 * (2 * 40 + 10))
        self.assertEqual(problem.affine_kkt.A.shape, (4 * 50, 4 * 50))
        self.assertFalse(problem.is_stokes)

    def test_affine_system_matches_direct_assembly(self):
        direct = self.problem.kkt(self.mu)
        affine = self.problem.affine_kkt.evaluate(self.mu)
        difference = abs(direct.matrix() - affine.matrix()).max()
        self.assertLess(difference, 1e-12 * abs(direct.matrix()).max())
        np.testing.assert_allclose(affine.rhs(), direct.rhs(), atol=1e-12 * np.abs(direct.rhs()).max())

    def test_lifted_state_carries_inflow_data(self):
        solution = self.problem.solve(self.mu)
        fields = self.problem.lifted_fields(solution)
        dofs = dirichlet_dofs(self.problem.spaces["state"], ["gamma_d"])
        np.testing.assert_array_equal(fields[VariableRole.STATE].values[:, dofs], 1.0)
        np.testing.assert_array_equal(fields[VariableRole.ADJOINT].values[:, dofs], 0.0)
        self.assertEqual(fields[VariableRole.CONTROL].values.shape, (4, 10))
        self.assertNotIn(VariableRole.PRESSURE, fields)

    def test_objective_agrees_with_quadratic_form(self):
        solution = self.problem.solve(self.mu)
        direct = self.problem.objective(solution, self.mu)
        self.assertAlmostEqual(solution.objective, direct, delta=1e-10 * max(1.0, abs(direct)))
        self.assertGreater(direct, 0.0)

    def test_snapshot_vectors(self):
        solution = self.problem.solve(self.mu)
        vectors = self.problem.snapshot_vectors(solution)
        self.assertEqual(set(vectors), {VariableRole.STATE, VariableRole.ADJOINT, VariableRole.CONTROL})
        self.assertEqual(vectors[VariableRole.STATE].shape, (4 * 40,))

    def test_inner_product_scopes(self):
        free = self.problem.inner_products()
        full = self.problem.inner_products("full")
        self.assertEqual(free[VariableRole.STATE].size, 4 * 40)
        self.assertEqual(full[VariableRole.STATE].size, 4 * 54)
        self.assertEqual(free[VariableRole.CONTROL].label, "l2")
        self.assertTrue(free[VariableRole.STATE].is_positive_definite())

    def test_parameter_outside_box(self):
        with self.assertRaises(ParameterError):
            self.problem.parameter([0.1, 2.0, 5.0])
        with self.assertRaises(ParameterError):
            self.problem.kkt(Parameter(("mu_diff", "mu_target", "mu_geo"), (1.0, 2.0, 1.0)))


class TestStokesProblem(unittest.TestCase):
    """Test cases for the tiny cavity problem."""

    @classmethod
    def setUpClass(cls):
        cls.problem = tiny_offline("stokes_cavity").problem
        cls.mu = cls.problem.parameter([0.05, 1.5])

    def test_dimensions(self):
        problem = self.problem
        n_v = problem.spaces["velocity"].dimension
        n_p = problem.spaces["pressure"].dimension
        self.assertEqual((n_v, n_p), (162, 25))
        self.assertEqual(problem.n_free, (n_v - 64) + n_p + 1)
        self.assertEqual(problem.control_size, n_v)
        self.assertTrue(problem.is_stokes)
        self.assertEqual(problem.divergence_family.shape, (n_p, n_v - 64))

    def test_affine_system_matches_direct_assembly(self):
        direct = self.problem.kkt(self.mu)
        affine = self.problem.affine_kkt.evaluate(self.mu)
        difference = abs(direct.matrix() - affine.matrix()).max()
        self.assertLess(difference, 1e-12 * abs(direct.matrix()).max())
        np.testing.assert_allclose(affine.rhs(), direct.rhs(), atol=1e-12 * np.abs(direct.rhs()).max())

    def test_pressure_has_zero_mean(self):
        solution = self.problem.solve(self.mu)
        fields = self.problem.lifted_fields(solution)
        weights = self.problem.pressure_mean_weights
        means = fields[VariableRole.PRESSURE].values @ weights
        np.testing.assert_allclose(means, 0.0, atol=1e-10)
        self.assertIn(VariableRole.ADJOINT_PRESSURE, fields)

    def test_lid_follows_the_time_profile(self):
        velocity = self.problem.spaces["velocity"]
        n = velocity.n_scalar
        lid = dirichlet_dofs(velocity.scalar_space(), ["gamma_in"])
        walls = dirichlet_dofs(velocity.scalar_space(), ["gamma_d"])
        interior_lid = np.setdiff1d(lid, walls)
        expected = inlet_profile(self.problem.grid.all_times)
        for k, factor in enumerate(expected):
            with self.subTest(step=k):
                np.testing.assert_allclose(self.problem.lifts[k, interior_lid], factor)
                np.testing.assert_array_equal(self.problem.lifts[k, n + interior_lid], 0.0)

    def test_target_is_a_velocity_field(self):
        target = self.problem.target_field
        self.assertEqual(target.values.shape, (4, self.problem.spaces["velocity"].dimension))
        self.assertGreater(float(np.abs(target.values).max()), 0.0)


if __name__ == "__main__":
    unittest.main()
