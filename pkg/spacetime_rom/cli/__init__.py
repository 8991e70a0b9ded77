#!/usr/bin/env python3
"""
CLI package for the space-time reduced order modelling tool.

This package provides command-line interface components including
argument parsing and the dispatch of the offline, online, benchmark and
inspect commands.
"""

from .parser import (
    create_argument_parser,
)

from .main import (
    main,
)

__all__ = [
    # Argument parsing
    "create_argument_parser",
    # Main application flow
    "main",
]
