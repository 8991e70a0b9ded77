"""
Unit tests for the CLI entry point and its exit codes.
"""

import importlib
import io
import json
import os
import tempfile
import unittest
from argparse import Namespace
from unittest.mock import Mock, patch

from spacetime_rom.cli import main as exported_main
from spacetime_rom.cli.main import COMMANDS, main, run_command
from spacetime_rom.config.env import ConfigError, Env
from spacetime_rom.constants import (
    EXIT_ARTIFACT_MISMATCH,
    EXIT_CONFIG_ERROR,
    EXIT_INTERRUPTED,
    EXIT_NUMERICAL_FAILURE,
    EXIT_SUCCESS,
    EXIT_UNEXPECTED_ERROR,
)
from spacetime_rom.exceptions import (
    ArtifactError,
    MeshError,
    ParameterError,
    PODError,
    SingularSystemError,
    StageError,
)

cli_module = importlib.import_module("spacetime_rom.cli.main")


class TestRunCommand(unittest.TestCase):
    """Test cases for the mapping of failures to exit codes."""

    def _code(self, error) -> int:
        handler = Mock(side_effect=error)
        with patch.dict(COMMANDS, {"offline": handler}), patch.object(cli_module, "logger"):
            return run_command(Namespace(command="offline"), Env())

    def test_success(self):
        handler = Mock(return_value=EXIT_SUCCESS)
        with patch.dict(COMMANDS, {"inspect": handler}):
            self.assertEqual(run_command(Namespace(command="inspect"), Env()), EXIT_SUCCESS)
        handler.assert_called_once()

    def test_exit_codes(self):
        cases = [
            (ParameterError("mu_geo=5 outside box"), EXIT_CONFIG_ERROR),
            (MeshError("unknown case"), EXIT_CONFIG_ERROR),
            (ConfigError("bad workers"), EXIT_CONFIG_ERROR),
            (ValueError("N=0"), EXIT_CONFIG_ERROR),
            (SingularSystemError("breakdown", 0.0), EXIT_NUMERICAL_FAILURE),
            (PODError("empty snapshots"), EXIT_NUMERICAL_FAILURE),
            (StageError("pod", "failed"), EXIT_NUMERICAL_FAILURE),
            (ArtifactError("checksum mismatch"), EXIT_ARTIFACT_MISMATCH),
            (PermissionError("runs/graetz/manifest.json"), EXIT_CONFIG_ERROR),
            (KeyboardInterrupt(), EXIT_INTERRUPTED),
            (RuntimeError("surprise"), EXIT_UNEXPECTED_ERROR),
        ]
        for error, expected in cases:
            with self.subTest(error=type(error).__name__):
                self.assertEqual(self._code(error), expected)


class TestMain(unittest.TestCase):
    """Test cases for main()."""

    def setUp(self):
        import spacetime_rom.config.env as env_module
        env_module._ENV = None
        self.environ = patch.dict(os.environ, {}, clear=True)
        self.environ.start()
        self.logging = patch.object(cli_module, "setup_logging")
        self.logging.start()

    def tearDown(self):
        self.logging.stop()
        self.environ.stop()
        import spacetime_rom.config.env as env_module
        env_module._ENV = None

    def test_package_exports_main(self):
        self.assertIs(exported_main, main)

    def test_inspect_prints_bookkeeping(self):
        with patch("sys.stdout", new_callable=io.StringIO) as stdout:
            main(["inspect", "--config", "graetz:benchmark"])
        summary = json.loads(stdout.getvalue())
        self.assertEqual(summary["config"]["benchmark"]["full_dimension"], 313830)
        self.assertEqual(summary["config"]["benchmark"]["reduced_dimension"], 175)

    def test_dry_run(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch("sys.stdout", new_callable=io.StringIO) as stdout, patch.object(cli_module, "logger"):
                main(["offline", "--config", "stokes_cavity:tiny", "--out", tmp, "--dry-run", "--seed", "4"])
            self.assertEqual(os.listdir(tmp), [])
        summary = json.loads(stdout.getvalue())
        self.assertEqual(summary["run"]["seed"], 4)
        self.assertEqual(summary["case_id"], "stokes_cavity")

    def test_installs_env(self):
        with patch("sys.stdout", new_callable=io.StringIO):
            main(["inspect", "--config", "graetz", "--workers", "2"])
        self.assertEqual(Env.current().WORKERS, 2)

    def test_invalid_setting(self):
        with patch.object(cli_module, "logger"):
            with self.assertRaises(SystemExit) as cm:
                main(["inspect", "--config", "graetz", "--workers", "0"])
        self.assertEqual(cm.exception.code, EXIT_CONFIG_ERROR)

    def test_unknown_case(self):
        with patch.object(cli_module, "logger"):
            with self.assertRaises(SystemExit) as cm:
                main(["inspect", "--config", "poisson"])
        self.assertEqual(cm.exception.code, EXIT_CONFIG_ERROR)

    def test_missing_artifacts(self):
        with tempfile.TemporaryDirectory() as tmp:
            for command in (["online", "--out", tmp], ["benchmark", "--out", tmp], ["inspect", "--out", tmp]):
                with self.subTest(command=command[0]):
                    with patch.object(cli_module, "logger") as mock_logger:
                        with self.assertRaises(SystemExit) as cm:
                            main(command)
                    self.assertEqual(cm.exception.code, EXIT_ARTIFACT_MISMATCH)
                    self.assertIn("manifest.json", mock_logger.error.call_args[0][0])

    def test_output_path_is_a_file(self):
        with tempfile.NamedTemporaryFile() as handle:
            with patch.object(cli_module, "logger") as mock_logger:
                with self.assertRaises(SystemExit) as cm:
                    main(["offline", "--config", "graetz:tiny", "--out", handle.name])
        self.assertEqual(cm.exception.code, EXIT_CONFIG_ERROR)
        self.assertIn("not a directory", mock_logger.error.call_args[0][0])

    def test_offline_then_online(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "run")
            with patch.object(cli_module, "logger"):
                main(["offline", "--config", "graetz:tiny", "--out", out])
                main(["online", "--out", out, "--mu", "0.1,2,1.5"])
            self.assertTrue(os.path.isfile(os.path.join(out, "online", "online.csv")))


if __name__ == "__main__":
    unittest.main()
