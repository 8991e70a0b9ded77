#!/usr/bin/env python3
"""
Integration tests.
"""
