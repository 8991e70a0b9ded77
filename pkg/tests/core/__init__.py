#!/usr/bin/env python3
"""
Offline pipeline, storage and output tests.
"""
