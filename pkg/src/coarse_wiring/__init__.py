"""Coarse k-wirings of ladder graphs: constructions, measurements and an exact search oracle."""

__version__ = "0.1.0"
