"""
End-to-end tests of the offline and online stages on the tiny presets.

Covers the stored artifacts, run determinism and the online comparison
against the full-order solution for both benchmark cases.
"""

import csv
import math
import tempfile
import unittest
from pathlib import Path

from spacetime_rom.cases.presets import graetz_case, stokes_cavity_case
from spacetime_rom.config.env import Env
from spacetime_rom.core.pipeline import load_run, run_offline, run_online
from spacetime_rom.reduction.aggregation import reduced_dimension
from spacetime_rom.models.rom import STOKES


class TestRunDeterminism(unittest.TestCase):
    """Two runs with the same seed write identical artifacts."""

    def test_same_seed_same_artifacts(self):
        config = graetz_case("tiny")
        with tempfile.TemporaryDirectory() as tmp:
            first = run_offline(config, Path(tmp) / "first", Env(WORKERS=1))
            second = run_offline(config, Path(tmp) / "second", Env(WORKERS=3))
        self.assertEqual(first.to_dict(include_timings=False), second.to_dict(include_timings=False))

    def test_seed_changes_the_training_set(self):
        config = graetz_case("tiny")
        with tempfile.TemporaryDirectory() as tmp:
            first = run_offline(config, Path(tmp) / "first", Env())
            second = run_offline(config, Path(tmp) / "second", Env(SEED=1))
        self.assertEqual(second.seed, 1)
        self.assertNotEqual(
            first.artifact("bases/state.strm").sha256,
            second.artifact("bases/state.strm").sha256,
        )


class TestStokesEndToEnd(unittest.TestCase):
    """Offline and online stages of the tiny cavity."""

    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        cls.out = Path(cls.tmp.name) / "cavity"
        cls.config = stokes_cavity_case("tiny")
        cls.manifest = run_offline(cls.config, cls.out, Env())

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def test_stored_bases(self):
        self.assertEqual(
            set(self.manifest.bases),
            {
                "state",
                "adjoint",
                "control",
                "pressure",
                "adjoint_pressure",
                "supremizer",
                "adjoint_supremizer",
            },
        )
        self.assertIn("supremizers", self.manifest.timings)
        self.assertTrue((self.out / "target.strm").is_file())

    def test_reduced_dimension(self):
        run = load_run(self.out)
        self.assertEqual(run.model.n_tot, reduced_dimension(STOKES, self.config.reduction.n))
        self.assertEqual(self.manifest.dimensions["n_tot"], run.model.n_tot)

    def test_online_with_comparison(self):
        results = Path(self.tmp.name) / "online"
        path = run_online(self.out, ["0.05,1.5"], compare_fe=True, results=str(results))
        with open(path, "r", encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 1)
        row = rows[0]
        for column in ("e_y", "e_u", "e_p", "e_press", "e_adjpress", "e_J"):
            with self.subTest(column=column):
                self.assertTrue(math.isfinite(float(row[column])))
        self.assertTrue((results / "mu_000_pressure.strm").is_file())

    def test_showcase_parameter_by_default(self):
        results = Path(self.tmp.name) / "showcase"
        path = run_online(self.out, results=str(results))
        with open(path, "r", encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
        showcase = self.config.parameters.showcase or self.config.parameters.reference
        self.assertEqual([float(rows[0][name]) for name in ("mu_phys", "mu_geo")], [float(v) for v in showcase])
        self.assertNotIn("e_J", rows[0])


if __name__ == "__main__":
    unittest.main()
