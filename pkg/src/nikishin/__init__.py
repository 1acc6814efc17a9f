"""Hermite-Padé approximation on Nikishin systems with exact verification."""

__version__ = "0.1.0"
