#!/usr/bin/env python3
"""
Enable execution of the spacetime_rom package as a module.

This allows running the package with: python -m spacetime_rom
"""

from .cli.main import main

if __name__ == "__main__":
    main()
