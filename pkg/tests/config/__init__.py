"""Tests for configuration modules."""