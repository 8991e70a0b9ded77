#!/usr/bin/env python3
"""
Data models tests.
"""
