"""
Unit tests for artifact storage.

Covers the binary matrix format, the manifest checksums and the stored
bases and reduced model of a tiny offline run.
"""

import hashlib
import json
import os
import struct
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

from spacetime_rom.constants import MANIFEST_FILENAME, MATRIX_MAGIC
from spacetime_rom.core.storage import (
    ArtifactWriter,
    basis_kind,
    file_sha256,
    load_basis_set,
    load_manifest,
    load_reduced_model,
    read_matrix,
    save_basis_set,
    save_reduced_model,
    spill_snapshots,
    write_manifest,
    write_matrix,
)
from spacetime_rom.exceptions import ArtifactError
from spacetime_rom.models.manifest import RunManifest
from spacetime_rom.models.rom import PARABOLIC, STOKES
from tests.helpers.oracles import tiny_offline


class TestMatrixFormat(unittest.TestCase):
    """Test cases for write_matrix and read_matrix."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_matrix_is_stored_column_major(self):
        array = np.arange(6, dtype=float).reshape(2, 3)
        path = self.root / "m.strm"
        self.assertEqual(write_matrix(path, array), [2, 3])

        data = path.read_bytes()
        magic, rows, cols, width = struct.unpack("<4sIII", data[:16])
        self.assertEqual((magic, rows, cols, width), (MATRIX_MAGIC, 2, 3, 8))
        self.assertEqual(len(data), 16 + 6 * 8)
        payload = np.frombuffer(data, dtype="<f8", offset=16)
        np.testing.assert_array_equal(payload, [0.0, 3.0, 1.0, 4.0, 2.0, 5.0])
        np.testing.assert_array_equal(read_matrix(path), array)

    def test_vector_is_one_column(self):
        path = self.root / "nested" / "v.strm"
        self.assertEqual(write_matrix(path, [1.5, -2.0, 0.25]), [3, 1])
        np.testing.assert_array_equal(read_matrix(path), [[1.5], [-2.0], [0.25]])

    def test_three_dimensional_array_rejected(self):
        with self.assertRaises(ArtifactError):
            write_matrix(self.root / "cube.strm", np.zeros((2, 2, 2)))

    def test_missing_file(self):
        with self.assertRaises(ArtifactError) as cm:
            read_matrix(self.root / "absent.strm")
        self.assertIn("Cannot read", str(cm.exception))

    def test_short_header(self):
        path = self.root / "short.strm"
        path.write_bytes(b"STRM")
        with self.assertRaises(ArtifactError):
            read_matrix(path)

    def test_wrong_magic(self):
        path = self.root / "m.strm"
        write_matrix(path, np.eye(2))
        data = bytearray(path.read_bytes())
        data[:4] = b"NOPE"
        path.write_bytes(bytes(data))
        with self.assertRaises(ArtifactError) as cm:
            read_matrix(path)
        self.assertIn("magic", str(cm.exception))

    def test_truncated_payload(self):
        path = self.root / "m.strm"
        write_matrix(path, np.eye(3))
        path.write_bytes(path.read_bytes()[:-8])
        with self.assertRaises(ArtifactError) as cm:
            read_matrix(path)
        self.assertIn("header announces", str(cm.exception))

    def test_wrong_scalar_width(self):
        path = self.root / "m.strm"
        path.write_bytes(struct.pack("<4sIII", MATRIX_MAGIC, 1, 1, 4) + b"\x00" * 4)
        with self.assertRaises(ArtifactError):
            read_matrix(path)


class TestManifest(unittest.TestCase):
    """Test cases for ArtifactWriter and the manifest checksums."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)
        self.writer = ArtifactWriter(self.root)
        self.writer.matrix("bases/state.strm", np.ones((4, 2)), "basis")
        self.writer.text("case.json", '{"case_id": "graetz"}\n', "case")
        manifest = RunManifest(
            case_id="graetz",
            config_hash="abc",
            seed=12345,
            grid={"final_time": 5.0, "n_steps": 4, "dt": 1.25},
            artifacts=list(self.writer.records),
            timings={"pod": 0.5},
        )
        with patch("spacetime_rom.core.storage.logger"):
            write_manifest(self.root, manifest)

    def tearDown(self):
        self.tmp.cleanup()

    def test_records_hold_checksums_and_shapes(self):
        record = self.writer.records[0]
        self.assertEqual(record.kind, "basis")
        self.assertEqual(record.shape, [4, 2])
        expected = hashlib.sha256((self.root / "bases/state.strm").read_bytes()).hexdigest()
        self.assertEqual(record.sha256, expected)
        self.assertEqual(file_sha256(self.root / "bases/state.strm"), expected)
        self.assertIsNone(self.writer.records[1].shape)

    def test_load_verifies(self):
        manifest = load_manifest(self.root)
        self.assertEqual(manifest.seed, 12345)
        self.assertEqual(len(manifest.artifacts), 2)
        self.assertEqual(manifest.artifact("case.json").kind, "case")
        self.assertNotIn("timings", manifest.to_dict(include_timings=False))

    def test_tampered_file(self):
        (self.root / "case.json").write_text('{"case_id": "stokes_cavity"}\n', encoding="utf-8")
        with self.assertRaises(ArtifactError) as cm:
            load_manifest(self.root)
        self.assertIn("Checksum mismatch for case.json", str(cm.exception))
        self.assertEqual(load_manifest(self.root, verify=False).case_id, "graetz")

    def test_missing_artifact(self):
        os.remove(self.root / "bases" / "state.strm")
        with self.assertRaises(ArtifactError) as cm:
            load_manifest(self.root)
        self.assertIn("missing", str(cm.exception))

    def test_missing_manifest(self):
        with tempfile.TemporaryDirectory() as empty:
            with self.assertRaises(ArtifactError) as cm:
                load_manifest(empty)
        self.assertIn("No manifest", str(cm.exception))

    def test_malformed_manifest(self):
        (self.root / MANIFEST_FILENAME).write_text(json.dumps({"seed": 1}), encoding="utf-8")
        with self.assertRaises(ArtifactError) as cm:
            load_manifest(self.root)
        self.assertIn("Malformed", str(cm.exception))


class TestStoredModel(unittest.TestCase):
    """Test cases for storing the bases and the reduced model of a tiny run."""

    @classmethod
    def setUpClass(cls):
        cls.state = tiny_offline("graetz")

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)
        self.writer = ArtifactWriter(self.root)

    def tearDown(self):
        self.tmp.cleanup()

    def test_basis_kind(self):
        self.assertEqual(basis_kind("graetz"), PARABOLIC)
        self.assertEqual(basis_kind("Stokes_Cavity"), STOKES)

    def test_basis_set_is_restored(self):
        meta = save_basis_set(self.writer, self.state.basis_set)
        self.assertEqual(set(meta), {"state", "adjoint", "control"})
        manifest = RunManifest("graetz", "hash", 0, {}, bases=meta)

        restored = load_basis_set(self.root, manifest)
        self.assertEqual(restored.kind, PARABOLIC)
        for name, basis in self.state.basis_set.bases.items():
            with self.subTest(basis=name):
                np.testing.assert_array_equal(restored[name].matrix, basis.matrix)
                np.testing.assert_array_equal(restored[name].spectrum, basis.spectrum)
                self.assertEqual(restored[name].role, basis.role)

    def test_basis_size_mismatch(self):
        meta = save_basis_set(self.writer, self.state.basis_set)
        meta["state"]["size"] = meta["state"]["size"] + 1
        with self.assertRaises(ArtifactError):
            load_basis_set(self.root, RunManifest("graetz", "hash", 0, {}, bases=meta))

    def test_reduced_model_is_restored(self):
        model = self.state.model
        save_reduced_model(self.writer, model)
        restored = load_reduced_model(self.root)

        self.assertIs(restored.case_id, model.case_id)
        self.assertEqual(restored.n_tot, model.n_tot)
        self.assertEqual(restored.layout, model.layout)
        self.assertEqual(restored.box, model.box)
        mu = self.state.training[1]
        matrix, rhs = model.system(mu)
        restored_matrix, restored_rhs = restored.system(mu)
        np.testing.assert_array_equal(restored_matrix, matrix)
        np.testing.assert_array_equal(restored_rhs, rhs)
        self.assertEqual(restored.output_constant(mu), model.output_constant(mu))

    def test_missing_reduced_model(self):
        with self.assertRaises(ArtifactError):
            load_reduced_model(self.root)

    def test_inconsistent_family(self):
        save_reduced_model(self.writer, self.state.model)
        path = self.root / "reduced_model.json"
        document = json.loads(path.read_text(encoding="utf-8"))
        document["families"]["A"]["descriptors"].append("mu_geo")
        path.write_text(json.dumps(document), encoding="utf-8")
        with self.assertRaises(ArtifactError) as cm:
            load_reduced_model(self.root)
        self.assertIn("Reduced family A", str(cm.exception))


class TestSpillSnapshots(unittest.TestCase):
    """Test cases for spill_snapshots."""

    def test_spills_every_matrix(self):
        with tempfile.TemporaryDirectory() as tmp:
            folder = spill_snapshots(tmp, "graetz", {"state": np.ones((3, 2)), "control": np.zeros((2, 2))})
            self.assertEqual(folder, Path(tmp) / "spacetime-rom-graetz")
            self.assertTrue((folder / "snapshots_state.strm").is_file())
            np.testing.assert_array_equal(read_matrix(folder / "snapshots_control.strm"), np.zeros((2, 2)))

    def test_unwritable_directory_is_reported(self):
        with tempfile.TemporaryDirectory() as tmp:
            blocker = Path(tmp) / "file"
            blocker.write_text("x", encoding="utf-8")
            with patch("spacetime_rom.core.storage.logger") as mock_logger:
                self.assertIsNone(spill_snapshots(blocker, "graetz", {"state": np.ones(2)}))
            mock_logger.warning.assert_called_once()


if __name__ == "__main__":
    unittest.main()
