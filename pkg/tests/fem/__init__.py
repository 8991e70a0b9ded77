"""Tests for the finite element layer."""
