"""Tests for the affine parameter decompositions."""
