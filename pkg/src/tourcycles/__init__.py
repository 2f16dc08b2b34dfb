"""Exact cycle census and verification toolkit for tournaments."""

__version__ = "0.1.0"
