"""
Schema-driven configuration loader.

This module provides a ConfigLoader that uses the runtime settings schema
to load, validate and merge configuration from multiple sources, and to
generate the command-line parser with its sub-commands.
"""

import logging
import os
import typing
from argparse import SUPPRESS, ArgumentParser, Namespace, _SubParsersAction
from typing import Any, Dict, Mapping, Optional

from pydantic import ValidationError

from .schema import RuntimeSettings

logger = logging.getLogger(__name__)

DOTENV_FILE = ".env.local"


def _schema_extra(field_info) -> dict:
    return field_info.json_schema_extra or {}


def _clean(value: Any) -> Any:
    if isinstance(value, str):
        stripped = value.strip()
        return stripped if stripped else None
    return value


class ConfigLoader:
    """Loads and validates runtime settings using a schema-driven approach."""

    @staticmethod
    def load(
        schema: type[RuntimeSettings] = RuntimeSettings,
        cli_args: Optional[Namespace] = None,
        cli_overrides: Optional[Mapping[str, Any]] = None,
    ) -> RuntimeSettings:
        """
        Load settings from all sources with precedence handling.

        Loading order (lowest to highest priority):
        1. Schema defaults
        2. .env.local file (if it exists)
        3. OS environment variables
        4. CLI arguments, then explicit overrides keyed by env var name

        Args:
            schema: The settings schema class to use
            cli_args: Parsed CLI arguments (if available)
            cli_overrides: Overrides keyed by environment variable name

        Returns:
            Validated settings instance

        Raises:
            ValueError: If validation fails, listing every failing variable
        """
        config_dict: Dict[str, Any] = {}

        _load_from_dotenv_file()

        for field_name, field_info in schema.model_fields.items():
            env_var = _schema_extra(field_info).get("env_var")
            if env_var:
                env_value = os.getenv(env_var)
                if env_value is not None and env_value.strip():
                    config_dict[field_name] = env_value.strip()

        if cli_args is not None:
            for field_name, field_info in schema.model_fields.items():
                cli_arg = _schema_extra(field_info).get("cli_arg")
                if cli_arg and getattr(cli_args, cli_arg, None) is not None:
                    config_dict[field_name] = _clean(getattr(cli_args, cli_arg))

        if cli_overrides:
            for field_name, field_info in schema.model_fields.items():
                env_var = _schema_extra(field_info).get("env_var")
                if env_var in cli_overrides and cli_overrides[env_var] is not None:
                    config_dict[field_name] = _clean(cli_overrides[env_var])

        try:
            settings = schema(**config_dict)
            logger.debug("Runtime settings loaded and validated successfully")
            return settings
        except ValidationError as e:
            errors = []
            for error in e.errors():
                field = error["loc"][0] if error["loc"] else "settings"
                field_info = schema.model_fields.get(field)
                env_var = _schema_extra(field_info).get("env_var") if field_info else str(field).upper()
                errors.append(f"{env_var}: {error['msg']}")
            error_msg = "Configuration validation failed:\n" + "\n".join(f"  - {err}" for err in errors)
            raise ValueError(error_msg) from e

    @staticmethod
    def add_schema_arguments(parser: ArgumentParser, schema: type[RuntimeSettings] = RuntimeSettings) -> None:
        """Add one option per schema field that declares a cli_arg."""
        for field_name, field_info in schema.model_fields.items():
            extra = _schema_extra(field_info)
            cli_arg = extra.get("cli_arg")
            if not cli_arg:
                continue

            kwargs: Dict[str, Any] = {
                "dest": cli_arg,
                "help": field_info.description or f"Override {extra.get('env_var', field_name.upper())}",
                "default": None,
            }
            field_type = field_info.annotation
            if typing.get_origin(field_type) is typing.Union:
                non_none = [arg for arg in typing.get_args(field_type) if arg is not type(None)]
                if len(non_none) == 1:
                    field_type = non_none[0]

            if field_type is int:
                kwargs["type"] = int
            elif field_type is float:
                kwargs["type"] = float
            elif field_type is bool:
                choices = extra.get("cli_choices")
                if choices:
                    kwargs["choices"] = choices
                else:
                    kwargs["action"] = "store_true"

            parser.add_argument(f"--{cli_arg.replace('_', '-')}", **kwargs)

    @staticmethod
    def generate_cli_parser(
        schema: type[RuntimeSettings] = RuntimeSettings,
        description: str = "Space-time POD-Galerkin reduced order models for parametrized optimal control",
    ) -> ArgumentParser:
        """
        Generate the ArgumentParser with the offline, online, benchmark and inspect sub-commands.

        Args:
            schema: The settings schema class
            description: Parser description

        Returns:
            Configured ArgumentParser
        """
        parser = ArgumentParser(
            prog="spacetime-rom",
            description=description,
            epilog="""
Examples:
  python run_rom.py offline --config graetz --out runs/graetz
  python run_rom.py online --out runs/graetz --mu 0.0833,2,2.5 --compare-fe
  python run_rom.py benchmark --out runs/graetz --n 2,4,6,8,10 --test-size 20
  python run_rom.py inspect --config stokes_cavity:benchmark
            """,
        )
        parser.add_argument(
            "--verbose",
            action="store_true",
            help="Enable verbose logging (DEBUG level)",
        )
        commands = parser.add_subparsers(dest="command", metavar="command")
        commands.required = True

        offline = _command(commands, "offline", "Build snapshots, POD bases and the reduced model", schema)
        offline.add_argument(
            "--config",
            required=True,
            help="Case config file, or a preset name 'graetz' / 'stokes_cavity' with optional ':scale'",
        )
        offline.add_argument("--out", required=True, help="Output directory for the offline artifacts")
        offline.add_argument("--n", type=int, default=None, help="Override the number of retained POD modes N")
        offline.add_argument(
            "--dry-run",
            action="store_true",
            help="Validate the config and print its dimensions without solving",
        )

        online = _command(commands, "online", "Solve the reduced model at one or more parameters", schema)
        online.add_argument("--out", required=True, help="Directory holding the offline artifacts")
        online.add_argument(
            "--mu",
            action="append",
            default=None,
            help="Parameter as comma-separated values or name=value pairs; repeat for several",
        )
        online.add_argument("--mu-file", default=None, help="Text file with one parameter per line")
        online.add_argument("--test-size", type=int, default=None, help="Solve at this many sampled test parameters")
        online.add_argument("--compare-fe", action="store_true", help="Also solve the full-order system and report errors")
        online.add_argument("--results", default=None, help="Directory for the online results (default: <out>/online)")

        benchmark = _command(commands, "benchmark", "Error decay and speedup over a range of N", schema)
        benchmark.add_argument("--out", required=True, help="Directory holding the offline artifacts")
        benchmark.add_argument("--n", default=None, help="Comma-separated list of N values (default: from the config)")
        benchmark.add_argument("--test-size", type=int, default=None, help="Number of test parameters")
        benchmark.add_argument("--results", default=None, help="CSV path (default: <out>/benchmark.csv)")

        inspect = _command(commands, "inspect", "Print manifest, dimensions and bookkeeping", schema)
        inspect.add_argument("--out", default=None, help="Directory holding the offline artifacts")
        inspect.add_argument("--config", default=None, help="Case config file or preset name")

        return parser


def _command(
    commands: _SubParsersAction, name: str, help_text: str, schema: type[RuntimeSettings]
) -> ArgumentParser:
    sub = commands.add_parser(name, help=help_text, description=help_text)
    sub.add_argument("--verbose", action="store_true", default=SUPPRESS, help="Enable verbose logging (DEBUG level)")
    ConfigLoader.add_schema_arguments(sub, schema)
    return sub


def _load_from_dotenv_file() -> None:
    """Load values from .env.local if python-dotenv is available."""
    try:
        from dotenv import load_dotenv

        if os.path.exists(DOTENV_FILE):
            load_dotenv(DOTENV_FILE, override=False)
            logger.debug(f"Loaded configuration from {DOTENV_FILE}")
        else:
            logger.debug(f"{DOTENV_FILE} file not found, skipping")
    except ImportError:
        logger.debug("python-dotenv not available, skipping .env.local file loading")
