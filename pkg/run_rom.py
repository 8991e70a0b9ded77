#!/usr/bin/env python3
"""
Space-Time ROM - Entry Point Wrapper

Simple wrapper script delegating to the spacetime_rom package CLI, so the
tool can be run from a checkout without installing it.
"""

import sys

from spacetime_rom.cli import main as cli_main, create_argument_parser


def main():
    """Main entry point that delegates to the package CLI."""
    try:
        cli_main()
    except KeyboardInterrupt:
        sys.exit(130)  # Standard exit code for Ctrl+C


__all__ = ["main", "create_argument_parser"]

if __name__ == "__main__":
    main()
