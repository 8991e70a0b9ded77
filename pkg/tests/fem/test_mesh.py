"""
Unit tests for the structured meshes and the geometric maps.
"""

import os
import tempfile
import unittest

import numpy as np

from spacetime_rom.exceptions import MeshError, ParameterError
from spacetime_rom.fem.geometry import deform_mesh, domain_area, subdomain_maps
from spacetime_rom.fem.mesh import build_structured_mesh, export_mesh
from spacetime_rom.models.case import CaseId, case_parameter_box


class TestGraetzMesh(unittest.TestCase):
    """Test cases for the Graetz channel mesh."""

    def setUp(self):
        self.mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)

    def test_counts(self):
        self.assertEqual(self.mesh.n_vertices, 9 * 6)
        self.assertEqual(self.mesh.n_triangles, 2 * 8 * 5)
        self.assertEqual(self.mesh.shape, (8, 5))

    def test_triangles_positively_oriented(self):
        self.assertTrue(np.all(self.mesh.signed_areas() > 0.0))

    def test_subdomain_areas(self):
        self.assertAlmostEqual(self.mesh.subdomain_area("omega_1"), 1.0, places=12)
        self.assertAlmostEqual(self.mesh.subdomain_area("omega_2"), 0.6, places=12)
        self.assertAlmostEqual(self.mesh.subdomain_area("omega_3"), 0.4, places=12)
        self.assertAlmostEqual(self.mesh.subdomain_area(), 2.0, places=12)

    def test_boundary_tag_lengths(self):
        self.assertAlmostEqual(self.mesh.tag_length("gamma_c"), 2.0, places=12)
        self.assertAlmostEqual(self.mesh.tag_length("gamma_n"), 1.0, places=12)
        self.assertAlmostEqual(self.mesh.tag_length("gamma_d"), 3.0, places=12)

    def test_control_boundary_lies_on_the_heated_walls(self):
        edges = self.mesh.edges_with_tag("gamma_c")
        points = self.mesh.vertices[edges.ravel()]
        self.assertTrue(np.all(points[:, 0] >= 1.0 - 1e-12))
        self.assertTrue(np.all((points[:, 1] < 1e-12) | (points[:, 1] > 1.0 - 1e-12)))

    def test_union_of_subdomains(self):
        cells = self.mesh.cells_in(("omega_2", "omega_3"))
        self.assertEqual(cells.size, self.mesh.n_triangles // 2)

    def test_unknown_tags_raise(self):
        with self.assertRaises(MeshError):
            self.mesh.edges_with_tag("gamma_in")
        with self.assertRaises(MeshError):
            self.mesh.cells_in("omega_9")

    def test_interfaces_must_be_grid_lines(self):
        with self.assertRaises(MeshError):
            build_structured_mesh(CaseId.GRAETZ, 7, 5)
        with self.assertRaises(MeshError):
            build_structured_mesh(CaseId.GRAETZ, 8, 4)

    def test_minimum_resolution(self):
        with self.assertRaises(MeshError):
            build_structured_mesh(CaseId.STOKES_CAVITY, 1, 4)

    def test_unknown_case(self):
        with self.assertRaises(MeshError):
            build_structured_mesh("poisson", 4, 4)


class TestStokesMesh(unittest.TestCase):
    """Test cases for the cavity mesh."""

    def setUp(self):
        self.mesh = build_structured_mesh("stokes_cavity", 4, 4)

    def test_single_subdomain(self):
        self.assertEqual(self.mesh.subdomain_names, {1: "omega"})
        self.assertAlmostEqual(self.mesh.subdomain_area("omega"), 1.0, places=12)

    def test_lid_and_walls(self):
        self.assertAlmostEqual(self.mesh.tag_length("gamma_in"), 1.0, places=12)
        self.assertAlmostEqual(self.mesh.tag_length("gamma_d"), 3.0, places=12)

    def test_declared_outflow_tag_is_empty(self):
        self.assertEqual(self.mesh.edges_with_tag("gamma_n").shape[0], 0)
        self.assertEqual(self.mesh.tag_length("gamma_n"), 0.0)


class TestGeometricMaps(unittest.TestCase):
    """Test cases for the affine subdomain maps."""

    def test_graetz_stretch(self):
        mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        mu = case_parameter_box(CaseId.GRAETZ).parameter([1.0 / 12.0, 2.0, 2.5])
        maps = subdomain_maps(CaseId.GRAETZ, mu)
        self.assertTrue(maps[0].is_identity())
        self.assertAlmostEqual(maps[1].jacobian_det, 2.5)
        self.assertAlmostEqual(domain_area(mesh, maps), 1.0 + 2.5, places=12)

        physical = deform_mesh(mesh, maps)
        self.assertAlmostEqual(float(physical.vertices[:, 0].max()), 3.5, places=12)
        self.assertAlmostEqual(physical.subdomain_area(), 3.5, places=12)
        self.assertTrue(np.all(physical.signed_areas() > 0.0))
        # Interface nodes are shared by the identity and the stretch.
        interface = np.isclose(mesh.vertices[:, 0], 1.0)
        np.testing.assert_allclose(physical.vertices[interface], mesh.vertices[interface])

    def test_reference_parameter_is_identity(self):
        box = case_parameter_box(CaseId.GRAETZ)
        maps = subdomain_maps(CaseId.GRAETZ, box.reference_parameter())
        self.assertTrue(all(m.is_identity() for m in maps))

    def test_cavity_area_scales_with_geometry_parameter(self):
        mesh = build_structured_mesh(CaseId.STOKES_CAVITY, 4, 4)
        mu = case_parameter_box(CaseId.STOKES_CAVITY).parameter({"mu_phys": 0.01, "mu_geo": 2.0})
        self.assertAlmostEqual(domain_area(mesh, subdomain_maps(CaseId.STOKES_CAVITY, mu)), 2.0, places=12)

    def test_map_inverse(self):
        mu = case_parameter_box(CaseId.GRAETZ).parameter([0.1, 2.0, 0.5])
        stretch = subdomain_maps(CaseId.GRAETZ, mu)[1]
        points = np.array([[1.0, 0.0], [2.0, 0.5], [1.5, 1.0]])
        np.testing.assert_allclose(stretch.inverse(stretch.apply(points)), points, atol=1e-14)

    def test_parameter_outside_box(self):
        outside = case_parameter_box(CaseId.GRAETZ).parameter([0.1, 2.0, 5.0])
        with self.assertRaises(ParameterError):
            subdomain_maps(CaseId.GRAETZ, outside)


class TestMeshExport(unittest.TestCase):
    """Test cases for the plain-text mesh export."""

    def test_record_counts(self):
        mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        with tempfile.TemporaryDirectory() as tmp:
            path = export_mesh(mesh, os.path.join(tmp, "graetz.mesh"))
            with open(path, encoding="utf-8") as f:
                lines = f.read().splitlines()
        kinds = [line.split()[0] for line in lines if not line.startswith("#")]
        self.assertEqual(kinds.count("V"), mesh.n_vertices)
        self.assertEqual(kinds.count("T"), mesh.n_triangles)
        self.assertEqual(kinds.count("E"), len(mesh.boundary_tags))
        self.assertIn("omega_3", "\n".join(lines))

    def test_vertex_coordinates_parse_as_floats(self):
        mesh = build_structured_mesh(CaseId.GRAETZ, 8, 5)
        with tempfile.TemporaryDirectory() as tmp:
            path = export_mesh(mesh, os.path.join(tmp, "graetz.mesh"))
            with open(path, encoding="utf-8") as f:
                vertices = [line.split() for line in f if line.startswith("V ")]
        for kind, index, x, y in vertices:
            i = int(index)
            self.assertEqual((float(x), float(y)), tuple(mesh.vertices[i]))
        self.assertEqual(vertices[1][2], "0.25")


if __name__ == "__main__":
    unittest.main()
