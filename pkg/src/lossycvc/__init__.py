"""Exact and lossy algorithms for connected vertex cover under structural parameters."""

__version__ = "0.1.0"
