#!/usr/bin/env python3
"""
Utilities tests.
"""
