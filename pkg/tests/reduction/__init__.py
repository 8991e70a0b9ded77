"""Tests for the reduction stages."""
