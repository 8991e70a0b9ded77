#!/usr/bin/env python3
"""
Test package for the space-time reduced order modelling package.
"""
