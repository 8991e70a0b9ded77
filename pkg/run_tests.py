#!/usr/bin/env python3
"""
Test runner script for the spacetime-rom project.

Discovers every tests/**/test_*.py module, runs it with unittest and prints
a summary. Pass a file name (e.g. test_pod.py) to run a single module.
The long desk-scale runs are skipped unless SPACETIME_ROM_RUN_SLOW=1.
"""

import sys
import unittest
from pathlib import Path


def _module_names(script_dir: Path):
    test_dir = script_dir / "tests"
    for file in sorted(test_dir.rglob("test_*.py")):
        relative_path = file.relative_to(script_dir)
        yield ".".join(relative_path.with_suffix("").parts)


def discover_and_run_tests(only: str = "") -> bool:
    """Load and run the test modules; returns True when all pass."""
    script_dir = Path(__file__).parent
    if not (script_dir / "tests").exists():
        print(f"Tests directory not found: {script_dir / 'tests'}")
        return False
    if str(script_dir) not in sys.path:
        sys.path.insert(0, str(script_dir))

    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    stem = only[:-3] if only.endswith(".py") else only
    for module_name in _module_names(script_dir):
        if stem and module_name.split(".")[-1] != stem:
            continue
        try:
            module = __import__(module_name, fromlist=[""])
        except ImportError as e:
            print(f"Failed to import {module_name}: {e}")
            return False
        suite.addTests(loader.loadTestsFromModule(module))

    if suite.countTestCases() == 0:
        print(f"No tests found{' for ' + only if only else ''}")
        return False

    print("=" * 60)
    print("RUNNING TESTS")
    print("=" * 60)
    result = unittest.TextTestRunner(verbosity=2, stream=sys.stdout).run(suite)

    print("\n" + "=" * 60)
    print("TEST SUMMARY")
    print("=" * 60)
    print(f"Tests run: {result.testsRun}")
    print(f"Failures: {len(result.failures)}")
    print(f"Errors: {len(result.errors)}")
    print(f"Skipped: {len(result.skipped)}")
    success = result.wasSuccessful()
    print(f"\nOverall result: {'PASSED' if success else 'FAILED'}")
    return success


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else ""
    sys.exit(0 if discover_and_run_tests(target) else 1)
