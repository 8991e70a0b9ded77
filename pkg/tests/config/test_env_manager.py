"""
Tests for the Environment Manager.

This module tests the runtime settings singleton including precedence
handling, validation, and error conditions.
"""

import os
import unittest
from argparse import Namespace
from unittest.mock import patch

from spacetime_rom.config.env import ConfigError, Env


class TestEnvManager(unittest.TestCase):
    """Test cases for the Environment Manager."""

    def setUp(self):
        """Set up test fixtures."""
        import spacetime_rom.config.env as env_module
        env_module._ENV = None

    def tearDown(self):
        """Clean up after tests."""
        import spacetime_rom.config.env as env_module
        env_module._ENV = None

    def test_defaults(self):
        """Test that every setting has a default."""
        with patch.dict(os.environ, {}, clear=True):
            env = Env.from_mapping({})
        self.assertEqual(env.WORKERS, 1)
        self.assertIsNone(env.SEED)
        self.assertIsNone(env.SCRATCH_DIR)
        self.assertTrue(env.LOG_JSON_EVENTS)

    def test_from_mapping_success(self):
        """Test creating Env instance from valid mapping."""
        mapping = {
            "SPACETIME_ROM_WORKERS": "4",
            "SPACETIME_ROM_SEED": "99",
            "SPACETIME_ROM_SCRATCH_DIR": "/tmp/scratch",
            "SPACETIME_ROM_LOG_EVENTS": "off",
        }
        env = Env.from_mapping(mapping)

        self.assertEqual(env.WORKERS, 4)
        self.assertEqual(env.SEED, 99)
        self.assertEqual(env.SCRATCH_DIR, "/tmp/scratch")
        self.assertFalse(env.LOG_JSON_EVENTS)

    def test_from_mapping_invalid_values(self):
        """Test that invalid values raise ConfigError naming the variable."""
        with self.assertRaises(ConfigError) as cm:
            Env.from_mapping({"SPACETIME_ROM_WORKERS": "0"})
        self.assertIn("SPACETIME_ROM_WORKERS", str(cm.exception))

        with self.assertRaises(ConfigError) as cm:
            Env.from_mapping({"SPACETIME_ROM_SEED": "-3", "SPACETIME_ROM_LOG_EVENTS": "maybe"})
        self.assertIn("SPACETIME_ROM_SEED", str(cm.exception))
        self.assertIn("SPACETIME_ROM_LOG_EVENTS", str(cm.exception))

    def test_from_mapping_does_not_install(self):
        Env.from_mapping({"SPACETIME_ROM_WORKERS": "2"})
        with self.assertRaises(ConfigError):
            Env.current()

    def test_to_dict(self):
        """Test converting Env to dictionary."""
        env = Env(WORKERS=2, SEED=5)
        self.assertEqual(
            env.to_dict(),
            {"WORKERS": 2, "SEED": 5, "SCRATCH_DIR": None, "LOG_JSON_EVENTS": True},
        )

    def test_current_before_load(self):
        """Test that Env.current() raises before Env.load()."""
        with self.assertRaises(ConfigError) as cm:
            Env.current()
        self.assertIn("not initialized", str(cm.exception))
        self.assertEqual(Env.current_or_default(), Env())

    @patch.dict(os.environ, {"SPACETIME_ROM_WORKERS": "3"}, clear=True)
    def test_load_installs_singleton(self):
        """Test that Env.load() installs the settings."""
        env = Env.load()
        self.assertIs(Env.current(), env)
        self.assertIs(Env.current_or_default(), env)
        self.assertEqual(env.WORKERS, 3)

    @patch.dict(os.environ, {"SPACETIME_ROM_WORKERS": "3", "SPACETIME_ROM_SEED": "11"}, clear=True)
    def test_cli_precedence(self):
        """Test that CLI arguments override environment variables."""
        args = Namespace(workers=6, seed=None, scratch_dir=None, log_events="false")
        env = Env.load(cli_args=args)
        self.assertEqual(env.WORKERS, 6)
        self.assertEqual(env.SEED, 11)
        self.assertFalse(env.LOG_JSON_EVENTS)

    @patch.dict(os.environ, {"SPACETIME_ROM_WORKERS": "3"}, clear=True)
    def test_overrides_beat_cli(self):
        args = Namespace(workers=6, seed=None, scratch_dir=None, log_events=None)
        env = Env.load(cli_args=args, cli_overrides={"SPACETIME_ROM_WORKERS": "8"})
        self.assertEqual(env.WORKERS, 8)

    @patch.dict(os.environ, {}, clear=True)
    def test_load_failure_leaves_singleton_unset(self):
        with self.assertRaises(ConfigError):
            Env.load(cli_overrides={"SPACETIME_ROM_WORKERS": "100"})
        with self.assertRaises(ConfigError):
            Env.current()

    def test_immutable(self):
        """Test that Env instances are frozen."""
        env = Env()
        with self.assertRaises(Exception):
            env.WORKERS = 5


if __name__ == "__main__":
    unittest.main()
