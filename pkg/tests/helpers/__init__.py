"""Shared fixtures and reference solvers for the test suite."""
