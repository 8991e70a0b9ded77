#!/usr/bin/env python3
"""
Setup script for the spacetime-rom package.
"""

from setuptools import setup, find_packages

# Read version from package
version = {}
with open("spacetime_rom/__init__.py") as f:
    exec(f.read().split("# Import models")[0], version)

# Read requirements
with open("requirements.txt") as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="spacetime-rom",
    version=version["__version__"],
    description=version["__description__"],
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=requirements,
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "spacetime-rom=spacetime_rom.main:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="reduced order model POD Galerkin optimal control space-time finite elements",
)
