"""Effective approximation measures for shifted logarithms at algebraic points."""

__version__ = "0.1.0"
