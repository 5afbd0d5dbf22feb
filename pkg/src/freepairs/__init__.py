"""Exact certification of free symmetric and unitary pairs."""

__version__ = "0.1.0"
