"""Exact classical invariant theory of binary forms."""

__version__ = "0.1.0"
