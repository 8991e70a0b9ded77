"""Tests for the full-order space-time solver."""
