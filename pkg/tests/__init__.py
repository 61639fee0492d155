"""
Test suite for noisy-sumsets.
"""
