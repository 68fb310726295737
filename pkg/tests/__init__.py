"""
Tests for Garoppos Product Categorizer.

This package contains all test modules for the categorizer application.
"""
