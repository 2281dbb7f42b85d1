"""Exact computations in simply-laced Chevalley groups over fields of characteristic 2."""

__version__ = "0.1.0"
