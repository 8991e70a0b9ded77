"""
Environment configuration management module.

This module provides the process-wide, immutable snapshot of the runtime
settings. It is loaded once by the CLI (or by tests through from_mapping)
and read everywhere else through Env.current().
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Optional

from .loader import ConfigLoader
from .schema import RuntimeSettings

logger = logging.getLogger(__name__)

# Module-level singleton instance
_ENV: Optional["Env"] = None


class ConfigError(Exception):
    """Raised when configuration validation fails."""


@dataclass(frozen=True)
class Env:
    """
    Immutable runtime settings.

    Attributes:
        WORKERS: Concurrent full-order solves during offline runs
        SEED: Override of the case sampling seed
        SCRATCH_DIR: Directory for spilled snapshot matrices
        LOG_JSON_EVENTS: Emit SOLVE/STAGE/ONLINE records
    """

    WORKERS: int = 1
    SEED: Optional[int] = None
    SCRATCH_DIR: Optional[str] = None
    LOG_JSON_EVENTS: bool = True

    @staticmethod
    def from_settings(settings: RuntimeSettings) -> "Env":
        return Env(
            WORKERS=settings.workers,
            SEED=settings.seed,
            SCRATCH_DIR=settings.scratch_dir,
            LOG_JSON_EVENTS=settings.log_json_events,
        )

    @staticmethod
    def load(cli_args=None, cli_overrides: Optional[Mapping[str, str]] = None) -> "Env":
        """
        Load settings from all sources and install them as the current Env.

        Args:
            cli_args: Parsed CLI namespace
            cli_overrides: Overrides keyed by environment variable name

        Returns:
            The installed Env

        Raises:
            ConfigError: If any setting is invalid
        """
        global _ENV
        try:
            settings = ConfigLoader.load(schema=RuntimeSettings, cli_args=cli_args, cli_overrides=cli_overrides)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        _ENV = Env.from_settings(settings)
        logger.debug(f"Runtime settings: {_ENV.to_dict()}")
        return _ENV

    @staticmethod
    def current() -> "Env":
        """
        Return the installed Env.

        Raises:
            ConfigError: If Env.load() has not been called yet
        """
        if _ENV is None:
            raise ConfigError("Environment not initialized. Call Env.load() first.")
        return _ENV

    @staticmethod
    def current_or_default() -> "Env":
        """The installed Env, or schema defaults when none was loaded (library use)."""
        return _ENV if _ENV is not None else Env()

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> "Env":
        """
        Build an Env whose values override the environment, without installing it.

        Raises:
            ConfigError: If a value is invalid
        """
        try:
            settings = ConfigLoader.load(schema=RuntimeSettings, cli_overrides=dict(mapping))
        except ValueError as e:
            raise ConfigError(str(e)) from e
        return cls.from_settings(settings)

    def to_dict(self) -> dict:
        return {
            "WORKERS": self.WORKERS,
            "SEED": self.SEED,
            "SCRATCH_DIR": self.SCRATCH_DIR,
            "LOG_JSON_EVENTS": self.LOG_JSON_EVENTS,
        }
