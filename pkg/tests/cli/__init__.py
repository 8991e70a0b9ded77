#!/usr/bin/env python3
"""
CLI interface tests.
"""
