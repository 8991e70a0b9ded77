"""
Configuration management for the space-time reduced order modelling package.

Runtime settings come from schema defaults, .env.local, environment
variables and CLI overrides, validated with Pydantic.
"""

from .env import ConfigError, Env
from .loader import ConfigLoader
from .schema import RuntimeSettings

__all__ = ["Env", "ConfigError", "RuntimeSettings", "ConfigLoader"]
