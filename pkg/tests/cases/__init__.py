"""Tests for the benchmark cases."""
