"""
CLI argument parser module.

The parser, including its sub-commands and the runtime setting options,
is generated from the settings schema by the ConfigLoader.
"""

from ..config.loader import ConfigLoader


def create_argument_parser():
    """Create the spacetime-rom argument parser with its offline, online, benchmark and inspect commands."""
    return ConfigLoader.generate_cli_parser()
