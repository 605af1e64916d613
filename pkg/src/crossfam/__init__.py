"""Exact tools for t-intersecting and cross t-intersecting set families."""

__version__ = "0.1.0"
