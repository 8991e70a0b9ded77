"""
Unit tests for the exactness of the affine decompositions.

Operators assembled directly on the physically deformed mesh must equal the
affine sum Σ θ_q(µ)·A_q evaluated from reference-domain terms.
"""

import unittest

import numpy as np

from spacetime_rom.affine.graetz import graetz_affine_decomposition, graetz_velocity
from spacetime_rom.affine.stokes import stokes_affine_decomposition
from spacetime_rom.cases.presets import case_config, sample_parameters
from spacetime_rom.fem.assembly import (
    assemble_advection,
    assemble_boundary_mass,
    assemble_divergence,
    assemble_mass,
    assemble_stiffness,
)
from spacetime_rom.fem.geometry import deform_mesh, subdomain_maps
from spacetime_rom.fem.mesh import build_structured_mesh
from spacetime_rom.fem.spaces import FunctionSpace
from spacetime_rom.models.case import CaseId, case_parameter_box

TOLERANCE = 1e-12
SAMPLES = 10


def _max_abs(matrix):
    return float(abs(matrix).max()) if matrix.nnz else 0.0


class TestGraetzExactness(unittest.TestCase):
    """Test cases for the Graetz families against deformed-mesh assembly."""

    @classmethod
    def setUpClass(cls):
        cls.mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        cls.ops = graetz_affine_decomposition(cls.mesh, {"state": FunctionSpace(cls.mesh, order=1)})

    def _check(self, mu):
        physical = deform_mesh(self.mesh, subdomain_maps(CaseId.GRAETZ, mu))
        space = FunctionSpace(physical, order=1)
        boundary = assemble_boundary_mass(space, "gamma_c")
        dofs = self.ops.control_dofs
        expected = {
            "mass": assemble_mass(space),
            "operator": mu["mu_diff"] * assemble_stiffness(space) + assemble_advection(space, graetz_velocity),
            "observation": assemble_mass(space, "omega_3"),
            "control_coupling": boundary[:, dofs],
            "control_mass": boundary[dofs, :][:, dofs],
        }
        for family, matrix in expected.items():
            with self.subTest(family=family, mu=mu.label()):
                affine = getattr(self.ops, family).evaluate(mu)
                self.assertLess(_max_abs(affine - matrix), TOLERANCE)

    def test_random_parameters(self):
        samples = sample_parameters(case_config("graetz", "tiny"), "test", count=SAMPLES)
        self.assertEqual(len(samples), SAMPLES)
        for mu in samples:
            self._check(mu)

    def test_box_corners_and_reference(self):
        box = case_parameter_box(CaseId.GRAETZ)
        self._check(box.parameter([1.0 / 20.0, 1.0, 0.5]))
        self._check(box.parameter([1.0 / 6.0, 3.0, 3.0]))
        self._check(box.reference_parameter())

    def test_target(self):
        mu = case_parameter_box(CaseId.GRAETZ).parameter([0.1, 2.5, 1.5])
        np.testing.assert_array_equal(self.ops.target.evaluate(mu), 2.5)


class TestStokesExactness(unittest.TestCase):
    """Test cases for the cavity families against deformed-mesh assembly."""

    @classmethod
    def setUpClass(cls):
        cls.mesh = build_structured_mesh(CaseId.STOKES_CAVITY, 4, 4)
        spaces = {
            "velocity": FunctionSpace(cls.mesh, order=2, components=2),
            "pressure": FunctionSpace(cls.mesh, order=1),
        }
        cls.ops = stokes_affine_decomposition(cls.mesh, spaces)
        cls.n_v = spaces["velocity"].dimension
        cls.n_p = spaces["pressure"].dimension

    @classmethod
    def _samples(cls):
        box = case_parameter_box(CaseId.STOKES_CAVITY)
        samples = sample_parameters(case_config("stokes_cavity", "tiny"), "test", count=SAMPLES)
        return samples + [box.parameter([1e-3, 0.5]), box.parameter([1e-1, 2.5])]

    def _physical(self, mu):
        physical = deform_mesh(self.mesh, subdomain_maps(CaseId.STOKES_CAVITY, mu))
        velocity = FunctionSpace(physical, order=2, components=2)
        pressure = FunctionSpace(physical, order=1)
        return velocity, pressure

    def test_momentum_blocks(self):
        for mu in self._samples():
            with self.subTest(mu=mu.label()):
                velocity, pressure = self._physical(mu)
                n_v, n_p = self.n_v, self.n_p
                mass = self.ops.mass.evaluate(mu).tocsr()
                operator = self.ops.operator.evaluate(mu).tocsr()
                divergence = assemble_divergence(velocity, pressure)

                self.assertLess(_max_abs(mass[:n_v, :n_v] - assemble_mass(velocity)), TOLERANCE)
                self.assertEqual(_max_abs(mass[n_v:, :]), 0.0)
                viscous = mu["mu_phys"] * assemble_stiffness(velocity)
                self.assertLess(_max_abs(operator[:n_v, :n_v] - viscous), TOLERANCE)
                gradient = operator[:n_v, n_v : n_v + n_p]
                self.assertLess(_max_abs(gradient - divergence.T), TOLERANCE)

    def test_continuity_rows(self):
        n_v, n_p = self.n_v, self.n_p
        for mu in self._samples():
            with self.subTest(mu=mu.label()):
                velocity, pressure = self._physical(mu)
                constraint = self.ops.constraint.evaluate(mu).tocsr()
                divergence = assemble_divergence(velocity, pressure)
                self.assertLess(_max_abs(constraint[n_v : n_v + n_p, :n_v] - divergence), TOLERANCE)
                self.assertEqual(_max_abs(constraint[:n_v, :]), 0.0)

    def test_mean_condition_is_parameter_independent(self):
        n_v, n_p = self.n_v, self.n_p
        box = case_parameter_box(CaseId.STOKES_CAVITY)
        first = self.ops.constraint.evaluate(box.parameter([0.05, 0.5])).toarray()
        second = self.ops.constraint.evaluate(box.parameter([0.05, 2.5])).toarray()
        np.testing.assert_array_equal(first[n_v : n_v + n_p, -1], second[n_v : n_v + n_p, -1])
        # The mean weights integrate to the reference area
        self.assertAlmostEqual(float(first[-1, n_v : n_v + n_p].sum()), 1.0, places=12)


if __name__ == "__main__":
    unittest.main()
