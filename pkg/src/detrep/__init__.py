"""Exact computations with determinantal representations of hypersurfaces."""

__version__ = "0.1.0"
